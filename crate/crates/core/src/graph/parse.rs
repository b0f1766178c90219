use super::Graph;
use crate::{Error, Result};

/// Parses `u v` lines of nonnegative integers. Blank lines and `#` comments
/// are ignored; the vertex count is one more than the largest index seen.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut pairs = Vec::new();
    let mut n = 0;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two vertex indices, found {} tokens", tokens.len()),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, tok) in ends.iter_mut().zip(&tokens) {
            *slot = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("malformed vertex index `{tok}`"),
            })?;
        }
        let [u, v] = ends;
        if u == v {
            return Err(Error::Loop {
                line: line_no,
                vertex: u,
            });
        }
        n = n.max(u + 1).max(v + 1);
        pairs.push((u, v));
    }
    Graph::from_edges(n, pairs)
}
