//! graph6 encoding: a size header followed by the upper triangle of the
//! adjacency matrix, column by column, packed six bits per printable byte
//! (value + 63).

use super::Graph;
use crate::{Error, Result};

const HEADER: &str = ">>graph6<<";

/// Decodes one graph6 line. The optional `>>graph6<<` header is skipped.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let body = line.strip_prefix(HEADER).unwrap_or(line).as_bytes();
    if let Some(&b) = body.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Graph6(format!(
            "byte {b:#04x} outside the printable range 63..=126"
        )));
    }
    let (n, rest) = decode_size(body)?;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if rest.len() != need {
        return Err(Error::Graph6(format!(
            "expected {need} adjacency bytes for {n} vertices, found {}",
            rest.len()
        )));
    }
    let mut pairs = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                pairs.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, pairs)
}

/// Decodes every non-blank line; errors carry the 1-based line number.
pub fn parse_graph6_lines(text: &str) -> Vec<Result<Graph>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            parse_graph6(l.trim()).map_err(|e| Error::Parse {
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

fn decode_size(body: &[u8]) -> Result<(usize, &[u8])> {
    let take = |bytes: &[u8]| {
        bytes
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize)
    };
    match body {
        [] => Err(Error::Graph6("empty string".into())),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(Error::Graph6("truncated 8-byte size header".into()));
            }
            Ok((take(&rest[..6]), &rest[6..]))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(Error::Graph6("truncated 4-byte size header".into()));
            }
            Ok((take(&rest[..3]), &rest[3..]))
        }
        [b, rest @ ..] => Ok(((b - 63) as usize, rest)),
    }
}

/// Encodes `g` without the optional header.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut packed = vec![0u8; bits.div_ceil(6)];
    for (_, (u, v)) in g.edges() {
        let (i, j) = (u.0, v.0);
        let k = j * (j - 1) / 2 + i;
        packed[k / 6] |= 1 << (5 - k % 6);
    }
    out.extend(packed.into_iter().map(|b| b + 63));
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_named;

    #[test]
    fn five_vertex_star() {
        let g = parse_graph6("D?{").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_pairs(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn empty_two_vertex_graph() {
        let g = parse_graph6("A?").unwrap();
        assert_eq!((g.n(), g.m()), (2, 0));
    }

    #[test]
    fn header_is_optional() {
        assert_eq!(
            parse_graph6(">>graph6<<D?{").unwrap(),
            parse_graph6("D?{").unwrap()
        );
    }

    #[test]
    fn truncated_and_bad_bytes_are_rejected() {
        assert!(parse_graph6("D?").is_err());
        assert!(parse_graph6("D?{?").is_err());
        assert!(parse_graph6("").is_err());
        assert!(parse_graph6("D? {").is_err());
        assert!(parse_graph6("~?").is_err());
    }

    #[test]
    fn petersen_round_trip() {
        let g = generate_named("petersen").unwrap();
        assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn long_size_header() {
        let g = Graph::from_edges(100, [(0, 99), (5, 6)]).unwrap();
        let s = to_graph6(&g);
        assert_eq!(s.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}
