//! The `sepack` command line.
//!
//! Exit codes: 0 for sat / valid / clean, 1 for unsat / invalid / lemma
//! violations, 2 for usage and I/O errors, 3 when a budget ran out.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::audit::{check_lemmas, compute_charges, is_switch_stable};
use crate::graph::{
    generate_named, parse_edge_list, parse_graph6, parse_graph6_lines, random_cubic, to_graph6,
};
use crate::matching::{
    evaluate, local_search, MatchingPair, NeighborhoodLimits, PairRecord, SearchConfig,
};
use crate::packing::{
    solve_exact, solve_pipeline, verify, ColoringRecord, EdgeColoring, PackingSequence,
    PipelineConfig, PipelineOutcome, SolveOutcome, DEFAULT_NODE_BUDGET,
};
use crate::{EdgeId, Graph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "sepack",
    version,
    about = "S-packing edge-colorings of subcubic graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide or construct a packing coloring.
    Solve(SolveArgs),
    /// Check a coloring file against a sequence.
    Verify(VerifyArgs),
    /// Classify leftover components and evaluate the structural predicates.
    Audit(AuditArgs),
    /// Print a generated graph.
    Gen(GenArgs),
    /// Edge distance between two edge ids.
    Distance(DistanceArgs),
    /// Solve many graphs, one result line each.
    Batch(BatchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Pipeline,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    /// Only for `gen`.
    Graph6,
    /// Only for `gen`.
    EdgeList,
}

#[derive(Debug, Args)]
struct Source {
    /// Edge-list file, or graph6 when the name ends in .g6 or .graph6.
    #[arg(long)]
    input: Option<PathBuf>,
    /// subdivided_k33, petersen, k4, k33, prism, c<n>, or random (with --n).
    #[arg(long)]
    family: Option<String>,
    /// Vertex count for --family random.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "1^2,2^4")]
    sequence: String,
    #[arg(long, value_enum, default_value_t = Method::Exact)]
    method: Method,
    /// Node budget of the exact solver.
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, default_value = "1^2,2^4")]
    sequence: String,
    /// JSON file of the form {"classes": [[edge ids], ...]}.
    #[arg(long)]
    coloring: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct AuditArgs {
    #[command(flatten)]
    source: Source,
    /// JSON file of the form {"m1": [...], "m2": [...]}; without it a pair
    /// is found by local search from --seed.
    #[arg(long)]
    pair: Option<PathBuf>,
    /// Move evaluations per local-search start.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    /// Number of random graphs, with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, value_enum, default_value_t = Format::EdgeList)]
    format: Format,
}

#[derive(Debug, Args)]
struct DistanceArgs {
    #[command(flatten)]
    source: Source,
    e1: usize,
    e2: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct BatchArgs {
    /// graph6 file, one graph per line; otherwise a generator is used.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of generated graphs, with seeds seed, seed+1, ...
    #[arg(long, default_value_t = 1)]
    count: u64,
    #[arg(long, default_value = "1^2,2^4")]
    sequence: String,
    #[arg(long, value_enum, default_value_t = Method::Pipeline)]
    method: Method,
    #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Lib(crate::Error),
}

impl From<crate::Error> for Failure {
    fn from(e: crate::Error) -> Self {
        Failure::Lib(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => f.write_str(m),
            Failure::Lib(e) => write!(f, "{e}"),
        }
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

/// Parses `args` (program name first), runs the command and writes the
/// report to `out`. Diagnostics go to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let shown = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if shown { out } else { err };
            let _ = write!(sink, "{}", e.render());
            return if shown { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => solve(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Audit(a) => audit(a),
        Command::Gen(a) => gen(a),
        Command::Distance(a) => distance(a),
        Command::Batch(a) => batch(a),
    };
    match result {
        Ok((code, report)) => {
            let _ = out.write_all(report.as_bytes());
            if !report.ends_with('\n') {
                let _ = out.write_all(b"\n");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn is_graph6_path(path: &Path) -> bool {
    matches!(
        path.extension().and_then(|x| x.to_str()),
        Some("g6" | "graph6")
    )
}

fn graph_from_family(family: &str, n: Option<usize>, seed: u64) -> Result<Graph, Failure> {
    if matches!(family, "random" | "random_cubic") {
        let n = n.ok_or_else(|| Failure::Usage("--family random needs --n".into()))?;
        return Ok(random_cubic(n, seed)?);
    }
    Ok(generate_named(family)?)
}

fn load(source: &Source) -> Result<Graph, Failure> {
    match (&source.input, &source.family) {
        (Some(_), Some(_)) => Err(Failure::Usage(
            "give either --input or --family, not both".into(),
        )),
        (None, None) => Err(Failure::Usage(
            "a graph is required: --input or --family".into(),
        )),
        (None, Some(f)) => graph_from_family(f, source.n, source.seed),
        (Some(path), None) => {
            let text = read(path)?;
            if is_graph6_path(path) {
                let line = text
                    .lines()
                    .map(str::trim)
                    .find(|l| !l.is_empty())
                    .ok_or_else(|| Failure::Usage(format!("{} is empty", path.display())))?;
                Ok(parse_graph6(line)?)
            } else {
                Ok(parse_edge_list(&text)?)
            }
        }
    }
}

fn sequence(text: &str) -> Result<PackingSequence, Failure> {
    Ok(PackingSequence::parse(text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}

fn classes_field(c: Option<&EdgeColoring>, count: usize) -> Vec<Vec<EdgeId>> {
    c.map(|c| c.classes(count)).unwrap_or_default()
}

fn tsv_classes(classes: &[Vec<EdgeId>]) -> String {
    classes
        .iter()
        .map(|k| {
            k.iter()
                .map(|e| e.0.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// One solve, shared by `solve` and `batch`.
struct Solved {
    status: &'static str,
    method: &'static str,
    nodes: u64,
    coloring: Option<EdgeColoring>,
    code: i32,
}

fn solve_one(
    g: &Graph,
    s: &PackingSequence,
    method: Method,
    budget: u64,
    seed: u64,
) -> Result<Solved, Failure> {
    match method {
        Method::Exact => {
            let out = solve_exact(g, s, budget);
            let code = match out {
                SolveOutcome::Sat { .. } => EXIT_OK,
                SolveOutcome::Unsat { .. } => EXIT_NEGATIVE,
                SolveOutcome::Unknown { .. } => EXIT_UNKNOWN,
            };
            Ok(Solved {
                status: out.status(),
                method: "exact",
                nodes: out.nodes(),
                coloring: out.coloring().cloned(),
                code,
            })
        }
        Method::Pipeline => {
            if s != &PackingSequence::ones_twos(2, 4)? {
                return Err(Failure::Usage(
                    "the pipeline only constructs 1^2,2^4 colorings".into(),
                ));
            }
            let config = PipelineConfig {
                fallback_budget: budget,
                ..PipelineConfig::default()
            };
            Ok(match solve_pipeline(g, seed, &config)? {
                PipelineOutcome::Sat { coloring, .. } => Solved {
                    status: "sat",
                    method: "pipeline",
                    nodes: 0,
                    coloring: Some(coloring),
                    code: EXIT_OK,
                },
                PipelineOutcome::Fallback { coloring, nodes } => Solved {
                    status: "sat",
                    method: "fallback",
                    nodes,
                    coloring: Some(coloring),
                    code: EXIT_OK,
                },
                PipelineOutcome::Fail { nodes } => Solved {
                    status: "fail",
                    method: "fallback",
                    nodes,
                    coloring: None,
                    code: EXIT_UNKNOWN,
                },
            })
        }
    }
}

fn solve(a: SolveArgs) -> Outcome {
    let g = load(&a.source)?;
    let s = sequence(&a.sequence)?;
    let solved = solve_one(&g, &s, a.method, a.budget, a.source.seed)?;
    if let Some(c) = &solved.coloring {
        // Never report a colouring that does not verify.
        if !verify(&g, &s, c)?.is_empty() {
            return Err(Failure::Usage(
                "internal error: solver produced an invalid coloring".into(),
            ));
        }
    }
    let classes = classes_field(solved.coloring.as_ref(), s.len());
    let report = match a.format {
        Format::Tsv => format!(
            "status\tsequence\tmethod\tnodes\tclasses\n{}\t{}\t{}\t{}\t{}",
            solved.status,
            s,
            solved.method,
            solved.nodes,
            tsv_classes(&classes)
        ),
        _ => to_json(&json!({
            "status": solved.status,
            "sequence": s,
            "classes": classes,
            "nodes": solved.nodes,
            "method": solved.method,
        })),
    };
    Ok((solved.code, report))
}

fn verify_cmd(a: VerifyArgs) -> Outcome {
    let g = load(&a.source)?;
    let s = sequence(&a.sequence)?;
    let record: ColoringRecord = serde_json::from_str(&read(&a.coloring)?)
        .map_err(|e| Failure::Usage(format!("bad coloring file: {e}")))?;
    let c = EdgeColoring::from_classes(&g, &record.classes)?;
    let violations = verify(&g, &s, &c)?;
    let code = if violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    };
    let report = match a.format {
        Format::Tsv => {
            let mut t = String::from("class\te1\te2\tdistance\trequired");
            for v in &violations {
                t.push_str(&format!(
                    "\n{}\t{}\t{}\t{}\t{}",
                    v.class, v.edges.0 .0, v.edges.1 .0, v.distance, v.required
                ));
            }
            t
        }
        _ => to_json(&json!({
            "valid": violations.is_empty(),
            "sequence": s,
            "violations": violations,
        })),
    };
    Ok((code, report))
}

fn audit(a: AuditArgs) -> Outcome {
    let g = load(&a.source)?;
    let limits = NeighborhoodLimits::FULL;
    let pair = match &a.pair {
        Some(path) => {
            let record: PairRecord = serde_json::from_str(&read(path)?)
                .map_err(|e| Failure::Usage(format!("bad pair file: {e}")))?;
            MatchingPair::from_record(&g, &record)?
        }
        None => {
            let mut config = SearchConfig::default();
            if let Some(b) = a.budget {
                config.budget = b;
            }
            local_search(&g, a.source.seed, &config)?.pair
        }
    };
    let stable = is_switch_stable(&g, &pair, limits)?;
    let lemmas = check_lemmas(&g, &pair).with_stability(limits, stable);
    let clean = lemmas.hard_hold();
    let code = if clean { EXIT_OK } else { EXIT_NEGATIVE };
    let report = match a.format {
        Format::Tsv => {
            let mut t = String::from("predicate\tholds");
            let violated = lemmas.violated();
            for name in [
                "no_C1",
                "no_cycle",
                "no_long_path",
                "no_K13_K13_link",
                "no_K13_P4_link",
                "no_P4_midP3_link",
                "no_P4_at_all",
                "paired_P3_pairs",
                "leaf_double_mid_link",
                "chain_P3_P3_P3",
                "two_leaves_two_mids",
            ] {
                t.push_str(&format!("\n{name}\t{}", !violated.contains(&name)));
            }
            t.push_str(&format!("\nswitch_stable\t{stable}"));
            t
        }
        _ => {
            let components: Vec<Value> = pair
                .leftover_graph(&g)
                .components
                .iter()
                .map(|c| json!({"kind": c.kind, "vertices": c.vertices, "edges": c.edges}))
                .collect();
            let (charges, charge_error) = match compute_charges(&g, &pair) {
                Ok(r) => (
                    serde_json::to_value(r).expect("charges serialize"),
                    Value::Null,
                ),
                Err(e) => (Value::Null, Value::String(e.to_string())),
            };
            to_json(&json!({
                "pair": pair.to_record(),
                "objective": evaluate(&g, &pair),
                "stable": stable,
                "clean": clean,
                "components": components,
                "lemmas": lemmas,
                "charges": charges,
                "charge_error": charge_error,
            }))
        }
    };
    Ok((code, report))
}

fn gen(a: GenArgs) -> Outcome {
    if a.source.input.is_some() {
        return Err(Failure::Usage("gen takes --family, not --input".into()));
    }
    let family = a
        .source
        .family
        .as_deref()
        .ok_or_else(|| Failure::Usage("gen needs --family".into()))?;
    let mut graphs = Vec::new();
    for i in 0..a.count.max(1) {
        graphs.push(graph_from_family(
            family,
            a.source.n,
            a.source.seed.wrapping_add(i),
        )?);
    }
    let report = match a.format {
        Format::Graph6 => graphs.iter().map(to_graph6).collect::<Vec<_>>().join("\n"),
        Format::Json => to_json(
            &graphs
                .iter()
                .map(|g| json!({"n": g.n(), "edges": g.edge_pairs()}))
                .collect::<Vec<_>>(),
        ),
        Format::EdgeList | Format::Tsv => graphs
            .iter()
            .map(|g| format!("# n={} m={}\n{}", g.n(), g.m(), g.to_edge_list()))
            .collect::<Vec<_>>()
            .join("\n"),
    };
    Ok((EXIT_OK, report))
}

fn distance(a: DistanceArgs) -> Outcome {
    let g = load(&a.source)?;
    let d = g.edge_distance(EdgeId(a.e1), EdgeId(a.e2))?;
    let report = match a.format {
        Format::Tsv => format!(
            "e1\te2\tdistance\n{}\t{}\t{}",
            a.e1,
            a.e2,
            d.map_or("inf".to_string(), |d| d.to_string())
        ),
        _ => to_json(&json!({"e1": a.e1, "e2": a.e2, "distance": d})),
    };
    Ok((EXIT_OK, report))
}

#[derive(Serialize)]
struct BatchLine {
    index: usize,
    status: String,
    method: Option<&'static str>,
    n: Option<usize>,
    m: Option<usize>,
    nodes: Option<u64>,
    verified: Option<bool>,
    error: Option<String>,
}

#[derive(Default, Serialize)]
struct BatchSummary {
    graphs: usize,
    sat: usize,
    fallback: usize,
    unsat: usize,
    unknown: usize,
    fail: usize,
    errors: usize,
}

fn batch(a: BatchArgs) -> Outcome {
    let s = sequence(&a.sequence)?;
    let inputs: Vec<(u64, Result<Graph, String>)> = match (&a.input, &a.family) {
        (Some(path), None) => parse_graph6_lines(&read(path)?)
            .into_iter()
            .map(|r| (a.seed, r.map_err(|e| e.to_string())))
            .collect(),
        (None, Some(family)) => (0..a.count)
            .map(|i| {
                let seed = a.seed.wrapping_add(i);
                (
                    seed,
                    graph_from_family(family, a.n, seed).map_err(|e| e.to_string()),
                )
            })
            .collect(),
        _ => {
            return Err(Failure::Usage(
                "batch needs exactly one of --input or --family".into(),
            ))
        }
    };
    let lines: Vec<BatchLine> = inputs
        .par_iter()
        .enumerate()
        .map(|(index, (seed, graph))| {
            let g = match graph {
                Ok(g) => g,
                Err(e) => return error_line(index, None, e.clone()),
            };
            match solve_one(g, &s, a.method, a.budget, *seed) {
                Ok(solved) => BatchLine {
                    index,
                    status: solved.status.to_string(),
                    method: Some(solved.method),
                    n: Some(g.n()),
                    m: Some(g.m()),
                    nodes: Some(solved.nodes),
                    verified: solved
                        .coloring
                        .as_ref()
                        .map(|c| verify(g, &s, c).map(|v| v.is_empty()).unwrap_or(false)),
                    error: None,
                },
                Err(e) => error_line(index, Some(g), e.to_string()),
            }
        })
        .collect();

    let mut summary = BatchSummary {
        graphs: lines.len(),
        ..BatchSummary::default()
    };
    for line in &lines {
        match (line.status.as_str(), line.method) {
            ("sat", Some("fallback")) => summary.fallback += 1,
            ("sat", _) if line.verified == Some(true) => summary.sat += 1,
            ("sat", _) => summary.fail += 1,
            ("unsat", _) => summary.unsat += 1,
            ("unknown", _) => summary.unknown += 1,
            ("fail", _) => summary.fail += 1,
            _ => summary.errors += 1,
        }
    }
    let code = if summary.errors > 0 {
        EXIT_USAGE
    } else if summary.unknown > 0 || summary.fail > 0 {
        EXIT_UNKNOWN
    } else if summary.unsat > 0 {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    };
    let report = match a.format {
        Format::Tsv => {
            let mut t = String::from("index\tstatus\tmethod\tn\tm\tnodes\terror");
            let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
            for l in &lines {
                t.push_str(&format!(
                    "\n{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    l.index,
                    l.status,
                    l.method.unwrap_or("-"),
                    opt(l.n.map(|x| x.to_string())),
                    opt(l.m.map(|x| x.to_string())),
                    opt(l.nodes.map(|x| x.to_string())),
                    opt(l.error.clone()),
                ));
            }
            t.push_str(&format!(
                "\n# graphs={} sat={} fallback={} unsat={} unknown={} fail={} errors={}",
                summary.graphs,
                summary.sat,
                summary.fallback,
                summary.unsat,
                summary.unknown,
                summary.fail,
                summary.errors
            ));
            t
        }
        _ => to_json(&json!({"results": lines, "summary": summary})),
    };
    Ok((code, report))
}

fn error_line(index: usize, g: Option<&Graph>, error: String) -> BatchLine {
    BatchLine {
        index,
        status: "error".into(),
        method: None,
        n: g.map(Graph::n),
        m: g.map(Graph::m),
        nodes: None,
        verified: None,
        error: Some(error),
    }
}
