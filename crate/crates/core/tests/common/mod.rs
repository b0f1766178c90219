//! Brute-force oracles shared by the integration tests. None of them call
//! into the library beyond reading a graph's edge list.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepack::{EdgeId, Graph, VertexId};

pub const INF: usize = usize::MAX;

/// Random connected subcubic graph with exactly `m` edges (m >= 1).
/// A random tree of max degree 3 is grown first, then chords are added
/// while degrees allow.
pub fn random_subcubic(m: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let tree_edges = rng.gen_range(1..=m);
        let n = tree_edges + 1;
        let mut deg = vec![0usize; n];
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for v in 1..n {
            let open: Vec<usize> = (0..v).filter(|&u| deg[u] < 3).collect();
            let u = *open
                .choose(&mut rng)
                .expect("a tree of max degree 3 always has an open vertex");
            deg[u] += 1;
            deg[v] += 1;
            pairs.push((u, v));
        }
        let mut slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|p| !pairs.contains(p))
            .collect();
        slots.shuffle(&mut rng);
        for (u, v) in slots {
            if pairs.len() == m {
                break;
            }
            if deg[u] < 3 && deg[v] < 3 {
                deg[u] += 1;
                deg[v] += 1;
                pairs.push((u, v));
            }
        }
        if pairs.len() == m {
            return Graph::from_edges(n, pairs).expect("valid edges");
        }
    }
}

/// All-pairs edge distances from an explicitly built line graph, by
/// Floyd-Warshall. `INF` across components.
pub fn line_graph_distances(g: &Graph) -> Vec<Vec<usize>> {
    let ends: Vec<(VertexId, VertexId)> = g.edges().map(|(_, p)| p).collect();
    let m = ends.len();
    let mut d = vec![vec![INF; m]; m];
    for i in 0..m {
        d[i][i] = 0;
        for j in 0..m {
            let (a, b) = ends[i];
            let (c, e) = ends[j];
            if i != j && (a == c || a == e || b == c || b == e) {
                d[i][j] = 1;
            }
        }
    }
    for k in 0..m {
        for i in 0..m {
            for j in 0..m {
                if d[i][k] != INF && d[k][j] != INF && d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

/// Decides whether `g` has an S-packing edge-coloring by walking the full
/// |S|^m assignment tree in edge order, cutting a branch as soon as its
/// prefix already breaks a distance requirement.
pub fn brute_packing(g: &Graph, s: &[u32]) -> Option<Vec<usize>> {
    let d = line_graph_distances(g);
    let m = g.m();
    let mut assign = vec![usize::MAX; m];
    fn go(i: usize, m: usize, s: &[u32], d: &[Vec<usize>], assign: &mut Vec<usize>) -> bool {
        if i == m {
            return true;
        }
        for c in 0..s.len() {
            let ok = (0..i).all(|j| assign[j] != c || d[i][j] == INF || d[i][j] > s[c] as usize);
            if ok {
                assign[i] = c;
                if go(i + 1, m, s, d, assign) {
                    return true;
                }
            }
        }
        assign[i] = usize::MAX;
        false
    }
    go(0, m, s, &d, &mut assign).then_some(assign)
}

/// Checks an assignment against S with the Floyd-Warshall distances.
pub fn assignment_valid(g: &Graph, s: &[u32], assign: &[usize]) -> bool {
    let d = line_graph_distances(g);
    (0..g.m()).all(|i| {
        assign[i] < s.len()
            && (0..i).all(|j| {
                assign[i] != assign[j] || d[i][j] == INF || d[i][j] > s[assign[i]] as usize
            })
    })
}

/// Number of H edges for a labelling 0 = leftover, 1 = M1, 2 = M2.
pub fn brute_h_edges(d: &[Vec<usize>], labels: &[u8]) -> usize {
    let left: Vec<usize> = (0..labels.len()).filter(|&i| labels[i] == 0).collect();
    let mut count = 0;
    for (x, &i) in left.iter().enumerate() {
        for &j in &left[x + 1..] {
            if d[i][j] <= 2 {
                count += 1;
            }
        }
    }
    count
}

/// Every labelling in {leftover, M1, M2}^m that is a pair of disjoint
/// matchings; returns the best (max union, then min H edges).
pub fn brute_max_union(g: &Graph) -> (usize, usize) {
    let m = g.m();
    let d = line_graph_distances(g);
    let ends: Vec<(usize, usize)> = g.edges().map(|(_, (u, v))| (u.0, v.0)).collect();
    let mut labels = vec![0u8; m];
    let mut best = (0usize, usize::MAX);
    let total = 3usize.pow(m as u32);
    for code in 0..total {
        let mut c = code;
        for l in labels.iter_mut() {
            *l = (c % 3) as u8;
            c /= 3;
        }
        let mut used = vec![[false; 2]; g.n()];
        let mut ok = true;
        'check: for i in 0..m {
            if labels[i] == 0 {
                continue;
            }
            let side = labels[i] as usize - 1;
            for v in [ends[i].0, ends[i].1] {
                if used[v][side] {
                    ok = false;
                    break 'check;
                }
                used[v][side] = true;
            }
        }
        if !ok {
            continue;
        }
        let union = labels.iter().filter(|&&l| l != 0).count();
        if union < best.0 {
            continue;
        }
        let h = brute_h_edges(&d, &labels);
        if union > best.0 || h < best.1 {
            best = (union, h);
        }
    }
    best
}

/// Plain k^n enumeration of vertex colorings.
pub fn brute_k_colorable(n: usize, edges: &[(usize, usize)], k: usize) -> bool {
    if n == 0 {
        return true;
    }
    if k == 0 {
        return false;
    }
    let mut colors = vec![0usize; n];
    loop {
        if edges.iter().all(|&(a, b)| colors[a] != colors[b]) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            colors[i] += 1;
            if colors[i] < k {
                break;
            }
            colors[i] = 0;
            i += 1;
        }
    }
}

pub fn edge(g: &Graph, u: usize, v: usize) -> EdgeId {
    g.edge_between(VertexId(u), VertexId(v))
        .expect("edge exists")
}

pub fn ids(xs: &[usize]) -> Vec<EdgeId> {
    xs.iter().map(|&x| EdgeId(x)).collect()
}

/// A graph with a fixed pair, given by edge ids.
pub struct Instance {
    pub name: &'static str,
    pub n: usize,
    pub edges: &'static [(usize, usize)],
    pub m1: &'static [usize],
    pub m2: &'static [usize],
}

impl Instance {
    pub fn build(&self) -> (Graph, sepack::matching::MatchingPair) {
        let g = Graph::from_edges(self.n, self.edges.iter().copied()).unwrap();
        assert_eq!(
            g.edge_pairs(),
            self.edges,
            "edge ids follow the listed order"
        );
        let pair = sepack::matching::MatchingPair::new(&g, &ids(self.m1), &ids(self.m2)).unwrap();
        (g, pair)
    }
}

/// Cubic instances realising the rows of the basic-component charge table.
/// Found by sampling greedy pairs on small random cubic graphs and frozen.
pub const TABLE_INSTANCES: [Instance; 4] = [
    Instance {
        name: "unpaired P3 and P2",
        n: 10,
        edges: &[
            (0, 1),
            (0, 5),
            (0, 7),
            (1, 4),
            (1, 8),
            (2, 4),
            (2, 5),
            (2, 6),
            (3, 4),
            (3, 7),
            (3, 9),
            (5, 9),
            (6, 7),
            (6, 8),
            (8, 9),
        ],
        m1: &[3, 7, 9, 11],
        m2: &[1, 4, 5, 10, 12],
    },
    Instance {
        name: "paired P3s and P2",
        n: 10,
        edges: &[
            (0, 2),
            (0, 4),
            (0, 5),
            (1, 4),
            (1, 5),
            (1, 9),
            (2, 6),
            (2, 7),
            (3, 4),
            (3, 7),
            (3, 8),
            (5, 8),
            (6, 8),
            (6, 9),
            (7, 9),
        ],
        m1: &[1, 4, 6, 10, 14],
        m2: &[2, 3, 7, 13],
    },
    Instance {
        name: "claw giving to a P4",
        n: 8,
        edges: &[
            (0, 2),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 3),
            (1, 6),
            (2, 7),
            (3, 5),
            (3, 7),
            (4, 6),
            (4, 7),
            (5, 6),
        ],
        m1: &[6, 7, 9],
        m2: &[3, 10, 11],
    },
    Instance {
        name: "two claws",
        n: 8,
        edges: &[
            (0, 2),
            (0, 3),
            (0, 6),
            (1, 4),
            (1, 5),
            (1, 7),
            (2, 4),
            (2, 5),
            (3, 4),
            (3, 7),
            (5, 6),
            (6, 7),
        ],
        m1: &[6, 9, 10],
        m2: &[7, 8, 11],
    },
];

/// Per-component charge ledger recomputed from scratch: `d_H` from the
/// Floyd-Warshall distances, components by union-find over leftover edges.
pub struct OracleComponent {
    pub edges: Vec<usize>,
    pub h_degrees: Vec<usize>,
    /// Twice the charge, to stay in integers.
    pub doubled_initial: i64,
    pub received: i64,
    pub given: i64,
}

impl OracleComponent {
    pub fn doubled_net(&self) -> i64 {
        self.doubled_initial + 2 * (self.received - self.given)
    }
}

pub fn oracle_charges(g: &Graph, labels: &[u8]) -> Vec<OracleComponent> {
    let d = line_graph_distances(g);
    let ends: Vec<(usize, usize)> = g.edges().map(|(_, (u, v))| (u.0, v.0)).collect();
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut deg = vec![0usize; g.n()];
    for (i, &(u, v)) in ends.iter().enumerate() {
        if labels[i] == 0 {
            deg[u] += 1;
            deg[v] += 1;
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = Vec::new();
    let mut comps: Vec<OracleComponent> = Vec::new();
    let slot = |root: usize, roots: &mut Vec<usize>, comps: &mut Vec<OracleComponent>| -> usize {
        if let Some(i) = roots.iter().position(|&r| r == root) {
            return i;
        }
        roots.push(root);
        comps.push(OracleComponent {
            edges: Vec::new(),
            h_degrees: Vec::new(),
            doubled_initial: 0,
            received: 0,
            given: 0,
        });
        comps.len() - 1
    };
    for i in 0..g.m() {
        if labels[i] != 0 {
            continue;
        }
        let r = find(&mut parent, ends[i].0);
        let c = slot(r, &mut roots, &mut comps);
        let dh = (0..g.m())
            .filter(|&j| j != i && labels[j] == 0 && d[i][j] <= 2)
            .count();
        comps[c].edges.push(i);
        comps[c].h_degrees.push(dh);
        comps[c].doubled_initial += 2 * dh as i64 - 9;
    }
    for i in 0..g.m() {
        if labels[i] == 0 {
            continue;
        }
        let (u, v) = ends[i];
        for (a, b) in [(u, v), (v, u)] {
            if deg[a] == 1 && deg[b] == 2 {
                let from = slot(find(&mut parent, a), &mut roots, &mut comps);
                let to = slot(find(&mut parent, b), &mut roots, &mut comps);
                comps[from].given += 1;
                comps[to].received += 1;
            }
        }
    }
    comps
}

/// The table rows, as (label, doubled net charge).
pub const TABLE_ROWS: [(&str, i64); 4] = [
    ("P2", -1),
    ("P3 unpaired", 0),
    ("P3 paired", 2),
    ("K13", -3),
];

/// Runs every table instance through `compute_charges` and the oracle.
/// Each basic component is matched to its row, the row's precondition on
/// H-degrees and transfers is checked, and its net charge must equal the
/// row value exactly. Returns how many components realised each row.
pub fn check_table_rows() -> Result<[usize; 4], String> {
    use num_rational::Rational64;
    use sepack::audit::{compute_charges, ComponentKind};

    let mut seen = [0usize; 4];
    for inst in &TABLE_INSTANCES {
        let (g, pair) = inst.build();
        let report = compute_charges(&g, &pair).map_err(|e| format!("{}: {e}", inst.name))?;
        let labels: Vec<u8> = g
            .edge_ids()
            .map(|e| match pair.label(e) {
                None => 0,
                Some(sepack::matching::Side::First) => 1,
                Some(sepack::matching::Side::Second) => 2,
            })
            .collect();
        let oracle = oracle_charges(&g, &labels);
        if oracle.len() != report.components.len() {
            return Err(format!("{}: component count differs", inst.name));
        }
        for c in &report.components {
            let edges: Vec<usize> = c.edges.iter().map(|e| e.0).collect();
            let o = oracle
                .iter()
                .find(|o| {
                    let mut a = o.edges.clone();
                    a.sort_unstable();
                    a == edges
                })
                .ok_or_else(|| format!("{}: oracle lacks component {edges:?}", inst.name))?;
            let half = |x: i64| Rational64::new(x, 2);
            if c.initial != half(o.doubled_initial)
                || c.received != Rational64::from(o.received)
                || c.given != Rational64::from(o.given)
                || c.net != half(o.doubled_net())
            {
                return Err(format!(
                    "{}: ledger of {edges:?} disagrees with the oracle",
                    inst.name
                ));
            }
            let total_after: i64 = o.h_degrees.iter().sum::<usize>() as i64 + o.received - o.given;
            let (row, precondition) = match c.kind {
                ComponentKind::P2 => (0, o.h_degrees[0] as i64 == 4 + o.given && o.received == 0),
                ComponentKind::P3 if !c.paired => (1, total_after == 9),
                ComponentKind::P3 => (2, o.h_degrees == [5, 5] && o.received == o.given),
                ComponentKind::K13 => (3, total_after == 12),
                _ => continue,
            };
            if !precondition {
                return Err(format!(
                    "{}: component {edges:?} misses the {} row precondition",
                    inst.name, TABLE_ROWS[row].0
                ));
            }
            if c.net != half(TABLE_ROWS[row].1) {
                return Err(format!(
                    "{}: {} component {edges:?} has net {} instead of {}",
                    inst.name,
                    TABLE_ROWS[row].0,
                    c.net,
                    half(TABLE_ROWS[row].1)
                ));
            }
            seen[row] += 1;
        }
    }
    Ok(seen)
}

/// Every connected subcubic graph with at least one edge on at most
/// `max_n` vertices (`max_n <= 6`), one per isomorphism class.
pub fn all_small_subcubic(max_n: usize) -> Vec<Graph> {
    assert!(max_n <= 6);
    let mut out = Vec::new();
    for n in 2..=max_n {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let perms = permutations(n);
        let mut seen = std::collections::HashSet::new();
        for mask in 1u32..(1 << slots.len()) {
            let pairs: Vec<(usize, usize)> = (0..slots.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| slots[i])
                .collect();
            let mut deg = vec![0; n];
            for &(u, v) in &pairs {
                deg[u] += 1;
                deg[v] += 1;
            }
            if deg.iter().any(|&d| d == 0 || d > 3) {
                continue;
            }
            let g = Graph::from_edges(n, pairs.iter().copied()).unwrap();
            if !g.is_connected() {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| {
                    let mut key: Vec<(usize, usize)> = pairs
                        .iter()
                        .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                        .collect();
                    key.sort_unstable();
                    key
                })
                .min()
                .unwrap();
            if seen.insert(canon) {
                out.push(g);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
