use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::Graph;
use crate::{Error, Result};

/// Named graph families understood by [`generate_named`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `K_{3,3}` with one edge subdivided once: 7 vertices, 10 edges.
    SubdividedK33,
    Petersen,
    K4,
    K33,
    /// The triangular prism.
    Prism,
    Cycle(usize),
}

impl Family {
    /// Accepts `subdivided_k33`, `petersen`, `k4`, `k33`, `prism`, and
    /// cycles written `c5` or `c(5)`.
    pub fn parse(name: &str) -> Result<Family> {
        let lower = name.trim().to_ascii_lowercase();
        let family = match lower.as_str() {
            "subdivided_k33" => Family::SubdividedK33,
            "petersen" => Family::Petersen,
            "k4" => Family::K4,
            "k33" => Family::K33,
            "prism" => Family::Prism,
            other => {
                let digits = other
                    .strip_prefix("c(")
                    .and_then(|s| s.strip_suffix(')'))
                    .or_else(|| other.strip_prefix('c'))
                    .ok_or_else(|| Error::UnknownFamily(name.to_string()))?;
                let len: usize = digits
                    .parse()
                    .map_err(|_| Error::UnknownFamily(name.to_string()))?;
                if len < 3 {
                    return Err(Error::InvalidArgument(format!(
                        "cycle length {len} is below 3"
                    )));
                }
                Family::Cycle(len)
            }
        };
        Ok(family)
    }

    pub fn build(self) -> Graph {
        let (n, pairs): (usize, Vec<(usize, usize)>) = match self {
            Family::SubdividedK33 => {
                // Parts {0,1,2} and {3,4,5}; vertex 6 subdivides 0-3.
                let mut pairs = vec![(0, 6), (6, 3)];
                for a in 0..3 {
                    for b in 3..6 {
                        if (a, b) != (0, 3) {
                            pairs.push((a, b));
                        }
                    }
                }
                (7, pairs)
            }
            Family::Petersen => {
                let mut pairs = Vec::new();
                for i in 0..5 {
                    pairs.push((i, (i + 1) % 5));
                    pairs.push((i, i + 5));
                    pairs.push((5 + i, 5 + (i + 2) % 5));
                }
                (10, pairs)
            }
            Family::K4 => (4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
            Family::K33 => {
                let pairs = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
                (6, pairs)
            }
            Family::Prism => (
                6,
                vec![
                    (0, 1),
                    (1, 2),
                    (2, 0),
                    (3, 4),
                    (4, 5),
                    (5, 3),
                    (0, 3),
                    (1, 4),
                    (2, 5),
                ],
            ),
            Family::Cycle(len) => (len, (0..len).map(|i| (i, (i + 1) % len)).collect()),
        };
        Graph::from_edges(n, pairs).expect("family edge lists are simple")
    }
}

/// The canonical graph of a named family.
pub fn generate_named(name: &str) -> Result<Graph> {
    Ok(Family::parse(name)?.build())
}

/// A connected simple cubic graph on `n` vertices from the configuration
/// model: three half-edges per vertex, a uniformly random perfect pairing,
/// and rejection of loops, parallel edges and disconnected outcomes.
/// Deterministic for a fixed `(n, seed)`.
pub fn random_cubic(n: usize, seed: u64) -> Result<Graph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "cubic graphs need an even vertex count of at least 4, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| [v, v, v]).collect();
    'attempt: loop {
        points.shuffle(&mut rng);
        let mut pairs = Vec::with_capacity(points.len() / 2);
        for chunk in points.chunks(2) {
            let (u, v) = (chunk[0].min(chunk[1]), chunk[0].max(chunk[1]));
            if u == v {
                continue 'attempt;
            }
            pairs.push((u, v));
        }
        pairs.sort_unstable();
        if pairs.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        let g = Graph::from_edges(n, pairs)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
}
