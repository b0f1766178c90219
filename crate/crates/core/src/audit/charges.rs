//! Discharging on the conflict graph: every H vertex starts with charge
//! `d_H(v) - 9/2`, and rule R0 moves one unit across each matched edge from
//! a leaf of one basic component to a degree-two vertex of another.

use num_rational::Rational64;
use serde::{Serialize, Serializer};

use super::ComponentKind;
use crate::conflict::build_conflict_graph;
use crate::graph::{EdgeId, Graph, VertexId};
use crate::matching::MatchingPair;
use crate::{Error, Result};

fn as_string<S: Serializer>(r: &Rational64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexCharge {
    pub edge: EdgeId,
    pub h_degree: usize,
    #[serde(serialize_with = "as_string")]
    pub initial: Rational64,
}

/// One application of R0 along the matched edge `via`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Transfer {
    pub via: EdgeId,
    pub from: usize,
    pub to: usize,
    #[serde(serialize_with = "as_string")]
    pub amount: Rational64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCharge {
    pub kind: ComponentKind,
    pub edges: Vec<EdgeId>,
    /// For a P3: its middle vertex is matched to the middle of another P3.
    pub paired: bool,
    #[serde(serialize_with = "as_string")]
    pub initial: Rational64,
    #[serde(serialize_with = "as_string")]
    pub received: Rational64,
    #[serde(serialize_with = "as_string")]
    pub given: Rational64,
    #[serde(serialize_with = "as_string")]
    pub net: Rational64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChargeReport {
    pub vertices: Vec<VertexCharge>,
    pub components: Vec<ComponentCharge>,
    pub transfers: Vec<Transfer>,
    #[serde(serialize_with = "as_string")]
    pub initial_total: Rational64,
    #[serde(serialize_with = "as_string")]
    pub net_total: Rational64,
}

/// Initial charges, R0 transfers and net charge per leftover component.
/// Fails if some component is not basic.
pub fn compute_charges(g: &Graph, pair: &MatchingPair) -> Result<ChargeReport> {
    pair.validate(g)?;
    let lg = pair.leftover_graph(g);
    if let Some(bad) = lg.components.iter().find(|c| !c.kind.is_basic()) {
        return Err(Error::NonBasicComponent(format!(
            "{} on edges {:?}",
            bad.kind, bad.edges
        )));
    }
    let h = build_conflict_graph(g, pair);
    let half = Rational64::new(9, 2);
    let vertices: Vec<VertexCharge> = h
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, &edge)| VertexCharge {
            edge,
            h_degree: h.degree(i),
            initial: Rational64::from_integer(h.degree(i) as i64) - half,
        })
        .collect();

    let deg = |v: VertexId| pair.leftover_degree(g, v);
    let is_p3_middle = |v: VertexId| {
        lg.component_of[v.0].is_some_and(|c| lg.components[c].kind == ComponentKind::P3)
            && deg(v) == 2
    };
    let mut components: Vec<ComponentCharge> = lg
        .components
        .iter()
        .map(|c| ComponentCharge {
            kind: c.kind,
            edges: c.edges.clone(),
            paired: false,
            initial: Rational64::from_integer(0),
            received: Rational64::from_integer(0),
            given: Rational64::from_integer(0),
            net: Rational64::from_integer(0),
        })
        .collect();
    for v in &vertices {
        let (a, _) = g.endpoints(v.edge);
        let c = lg.component_of[a.0].expect("leftover edges lie in components");
        components[c].initial += v.initial;
    }

    let mut transfers = Vec::new();
    for (e, (u, v)) in g.edges() {
        if !pair.is_matched(e) {
            continue;
        }
        if is_p3_middle(u) && is_p3_middle(v) && lg.component_of[u.0] != lg.component_of[v.0] {
            for x in [u, v] {
                components[lg.component_of[x.0].expect("P3 vertices have components")].paired =
                    true;
            }
        }
        for (a, b) in [(u, v), (v, u)] {
            if let (Some(from), Some(to)) = (lg.component_of[a.0], lg.component_of[b.0]) {
                if deg(a) == 1 && deg(b) == 2 {
                    transfers.push(Transfer {
                        via: e,
                        from,
                        to,
                        amount: Rational64::from_integer(1),
                    });
                }
            }
        }
    }
    for t in &transfers {
        components[t.from].given += t.amount;
        components[t.to].received += t.amount;
    }
    for c in &mut components {
        c.net = c.initial + c.received - c.given;
    }
    let initial_total = vertices.iter().map(|v| v.initial).sum();
    let net_total = components.iter().map(|c| c.net).sum();
    Ok(ChargeReport {
        vertices,
        components,
        transfers,
        initial_total,
        net_total,
    })
}

/// The Kostochka–Yancey lower bound on the edge count of a `k`-critical
/// graph with `n` vertices: `(k/2 - 1/(k-1)) n - k(k-3) / (2(k-1))`.
pub fn ky_bound(k: i64, n: i64) -> Result<Rational64> {
    if k < 3 || n < k {
        return Err(Error::InvalidArgument(format!(
            "ky_bound needs k >= 3 and n >= k, got k={k}, n={n}"
        )));
    }
    let slope = Rational64::new(k, 2) - Rational64::new(1, k - 1);
    Ok(slope * n - Rational64::new(k * (k - 3), 2 * (k - 1)))
}
