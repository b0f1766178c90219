use super::{EdgeId, Graph, VertexId};
use crate::{Error, Result};

/// A cubic supergraph together with the image of every original edge.
#[derive(Clone, Debug)]
pub struct CubicEmbedding {
    pub graph: Graph,
    /// `edge_map[e]` is the id of original edge `e` inside `graph`.
    pub edge_map: Vec<EdgeId>,
}

/// Embeds a connected subcubic graph into a connected simple cubic graph.
///
/// Each round takes two disjoint copies of the current graph and joins every
/// vertex of degree below three to its twin. Original vertices keep their
/// indices (they live in the first copy), so the original edges map to edges
/// with the same endpoints. Three rounds always suffice.
pub fn cubic_embed(g: &Graph) -> Result<CubicEmbedding> {
    g.require_subcubic()?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if g.is_cubic() {
        return Ok(CubicEmbedding {
            graph: g.clone(),
            edge_map: g.edge_ids().collect(),
        });
    }
    let mut n = g.n();
    let mut pairs = g.edge_pairs();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(VertexId(v))).collect();
    while degree.iter().any(|&d| d < 3) {
        let mut next = pairs.clone();
        next.extend(pairs.iter().map(|&(u, v)| (u + n, v + n)));
        for (v, &d) in degree.iter().enumerate() {
            if d < 3 {
                next.push((v, v + n));
            }
        }
        let bumped: Vec<usize> = degree
            .iter()
            .map(|&d| if d < 3 { d + 1 } else { d })
            .collect();
        degree = bumped.iter().chain(bumped.iter()).copied().collect();
        pairs = next;
        n *= 2;
    }
    let graph = Graph::from_edges(n, pairs)?;
    let edge_map = g
        .edges()
        .map(|(_, (u, v))| {
            graph
                .edge_between(u, v)
                .expect("original edges survive doubling")
        })
        .collect();
    Ok(CubicEmbedding { graph, edge_map })
}
