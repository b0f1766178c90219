//! C interface to `sepack`.
//!
//! Graphs, packing sequences and colourings cross the boundary as opaque
//! handles. Every fallible call returns a [`SepackError`] code; on failure
//! `sepack_last_error` gives a message for the calling thread. Handles
//! returned through out-pointers are owned by the caller and must be released
//! with the matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sepack::graph::{generate_named, parse_edge_list, parse_graph6, random_cubic};
use sepack::packing::{
    solve_exact, solve_pipeline, verify, EdgeColoring, PackingSequence, PipelineConfig,
    PipelineOutcome, SolveOutcome,
};
use sepack::{EdgeId, Error, Graph};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SepackError {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    NotSubcubic = 5,
    Sequence = 6,
    Coloring = 7,
    TooLarge = 8,
    OutOfRange = 9,
    Panic = 10,
}

/// Answer of a solver call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SepackStatus {
    Sat = 0,
    Unsat = 1,
    /// Budget exhausted before a decision.
    Unknown = 2,
    /// Pipeline and its exact fallback both gave up.
    Fail = 3,
}

/// Which route produced a pipeline colouring.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SepackMethod {
    Pipeline = 0,
    /// The exact solver took over after every pipeline attempt failed.
    Fallback = 1,
}

/// Opaque graph handle.
pub struct SepackGraph(Graph);

/// Opaque packing sequence handle.
pub struct SepackSequence(PackingSequence);

/// Opaque edge colouring handle.
pub struct SepackColoring(EdgeColoring);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(text));
}

fn code_of(e: &Error) -> SepackError {
    match e {
        Error::Parse { .. } | Error::Loop { .. } | Error::Graph6(_) => SepackError::Parse,
        Error::UnknownFamily(_) | Error::InvalidArgument(_) | Error::InvalidPair(_) => {
            SepackError::InvalidArgument
        }
        Error::NotSubcubic { .. } | Error::Disconnected | Error::NonBasicComponent(_) => {
            SepackError::NotSubcubic
        }
        Error::EdgeOutOfRange(_) => SepackError::OutOfRange,
        Error::TooLarge { .. } => SepackError::TooLarge,
        Error::Sequence(_) => SepackError::Sequence,
        Error::Coloring(_) => SepackError::Coloring,
    }
}

struct Fail(SepackError, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(code_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SepackError::NullPointer, format!("{what} is null"))
}

/// Runs `f`, records any failure and turns panics into `Panic`.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SepackError {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SepackError::Ok,
        Ok(Err(Fail(code, message))) => {
            set_last_error(message);
            code
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal panic: {message}"));
            SepackError::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Fail(SepackError::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

/// Message for the last failed call on this thread, or null if none.
/// The pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sepack_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sepack_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a graph on `n` vertices from `m` pairs stored flat in `pairs`
/// (`2 * m` entries).
///
/// # Safety
/// `pairs` must point to `2 * m` readable values unless `m` is zero.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_from_edges(
    n: usize,
    pairs: *const usize,
    m: usize,
    out: *mut *mut SepackGraph,
) -> SepackError {
    guard(|| {
        let len = m
            .checked_mul(2)
            .ok_or_else(|| Fail(SepackError::InvalidArgument, "edge count overflows".into()))?;
        let flat = slice(pairs, len, "pairs")?;
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|p| (p[0], p[1])))?;
        put(out, SepackGraph(g))
    })
}

/// Parses one graph6 line.
///
/// # Safety
/// `line` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_from_graph6(
    line: *const c_char,
    out: *mut *mut SepackGraph,
) -> SepackError {
    guard(|| put(out, SepackGraph(parse_graph6(text(line, "line")?.trim())?)))
}

/// Parses an edge list: one `u v` pair per line, `#` comments allowed.
///
/// # Safety
/// `body` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_from_edge_list(
    body: *const c_char,
    out: *mut *mut SepackGraph,
) -> SepackError {
    guard(|| put(out, SepackGraph(parse_edge_list(text(body, "body")?)?)))
}

/// One of the built-in named graphs, such as `petersen` or `subdivided_k33`.
///
/// # Safety
/// `name` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_named(
    name: *const c_char,
    out: *mut *mut SepackGraph,
) -> SepackError {
    guard(|| put(out, SepackGraph(generate_named(text(name, "name")?)?)))
}

/// A seeded random connected cubic graph on `n` vertices.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_random_cubic(
    n: usize,
    seed: u64,
    out: *mut *mut SepackGraph,
) -> SepackError {
    guard(|| put(out, SepackGraph(random_cubic(n, seed)?)))
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_free(g: *mut SepackGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_vertex_count(g: *const SepackGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.n())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_edge_count(g: *const SepackGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.m())
}

/// Endpoints of edge `e`.
///
/// # Safety
/// `g` must be a live handle; `u` and `v` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_edge(
    g: *const SepackGraph,
    e: usize,
    u: *mut usize,
    v: *mut usize,
) -> SepackError {
    guard(|| {
        let g = &get(g, "graph")?.0;
        g.check_edge(EdgeId(e))?;
        if u.is_null() || v.is_null() {
            return Err(null("endpoint"));
        }
        let (a, b) = g.endpoints(EdgeId(e));
        *u = a.0;
        *v = b.0;
        Ok(())
    })
}

/// Line-graph distance between two edges. `*reachable` is false, and
/// `*distance` untouched, when they lie in different components.
///
/// # Safety
/// `g` must be a live handle; `distance` and `reachable` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn sepack_graph_edge_distance(
    g: *const SepackGraph,
    e1: usize,
    e2: usize,
    distance: *mut usize,
    reachable: *mut bool,
) -> SepackError {
    guard(|| {
        let g = &get(g, "graph")?.0;
        if distance.is_null() || reachable.is_null() {
            return Err(null("out"));
        }
        match g.edge_distance(EdgeId(e1), EdgeId(e2))? {
            Some(d) => {
                *distance = d;
                *reachable = true;
            }
            None => *reachable = false,
        }
        Ok(())
    })
}

/// Parses a sequence such as `1^2,2^4` or `1,1,2`.
///
/// # Safety
/// `spec` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn sepack_sequence_parse(
    spec: *const c_char,
    out: *mut *mut SepackSequence,
) -> SepackError {
    guard(|| {
        put(
            out,
            SepackSequence(PackingSequence::parse(text(spec, "spec")?)?),
        )
    })
}

/// Builds a sequence from `len` non-decreasing positive values.
///
/// # Safety
/// `values` must point to `len` readable values unless `len` is zero.
#[no_mangle]
pub unsafe extern "C" fn sepack_sequence_new(
    values: *const u32,
    len: usize,
    out: *mut *mut SepackSequence,
) -> SepackError {
    guard(|| {
        put(
            out,
            SepackSequence(PackingSequence::new(
                slice(values, len, "values")?.to_vec(),
            )?),
        )
    })
}

/// Number of classes, or 0 for a null handle.
///
/// # Safety
/// `s` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sepack_sequence_len(s: *const SepackSequence) -> usize {
    s.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `s` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sepack_sequence_free(s: *mut SepackSequence) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Wraps a class-per-edge assignment of length `len`.
///
/// # Safety
/// `classes` must point to `len` readable values unless `len` is zero.
#[no_mangle]
pub unsafe extern "C" fn sepack_coloring_new(
    classes: *const usize,
    len: usize,
    out: *mut *mut SepackColoring,
) -> SepackError {
    guard(|| {
        put(
            out,
            SepackColoring(EdgeColoring::from_assignment(
                slice(classes, len, "classes")?.to_vec(),
            )),
        )
    })
}

/// Number of coloured edges, or 0 for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sepack_coloring_len(c: *const SepackColoring) -> usize {
    c.as_ref().map_or(0, |c| c.0.len())
}

/// Copies the class of every edge into `buf`, which holds `cap` entries.
/// Fails with `InvalidArgument` if `cap` is smaller than the edge count.
///
/// # Safety
/// `c` must be a live handle; `buf` must have room for `cap` values.
#[no_mangle]
pub unsafe extern "C" fn sepack_coloring_classes(
    c: *const SepackColoring,
    buf: *mut usize,
    cap: usize,
) -> SepackError {
    guard(|| {
        let c = &get(c, "coloring")?.0;
        let src = c.assignment();
        if cap < src.len() {
            return Err(Fail(
                SepackError::InvalidArgument,
                format!("buffer holds {cap} entries, need {}", src.len()),
            ));
        }
        if !src.is_empty() {
            if buf.is_null() {
                return Err(null("buf"));
            }
            ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
        }
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sepack_coloring_free(c: *mut SepackColoring) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Counts pairs of same-class edges that are too close. Zero means valid.
///
/// # Safety
/// All handles must be live; `violations` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sepack_verify(
    g: *const SepackGraph,
    s: *const SepackSequence,
    c: *const SepackColoring,
    violations: *mut usize,
) -> SepackError {
    guard(|| {
        let found = verify(
            &get(g, "graph")?.0,
            &get(s, "sequence")?.0,
            &get(c, "coloring")?.0,
        )?;
        if violations.is_null() {
            return Err(null("violations"));
        }
        *violations = found.len();
        Ok(())
    })
}

/// Exact search with a node budget (0 means the library default).
/// `coloring` may be null; otherwise it receives a new handle on `Sat` and
/// null on any other status. `nodes` may be null.
///
/// # Safety
/// `g` and `s` must be live handles; `status` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sepack_solve_exact(
    g: *const SepackGraph,
    s: *const SepackSequence,
    budget: u64,
    status: *mut SepackStatus,
    nodes: *mut u64,
    coloring: *mut *mut SepackColoring,
) -> SepackError {
    guard(|| {
        let g = &get(g, "graph")?.0;
        let s = &get(s, "sequence")?.0;
        if status.is_null() {
            return Err(null("status"));
        }
        let budget = if budget == 0 {
            sepack::packing::DEFAULT_NODE_BUDGET
        } else {
            budget
        };
        let outcome = solve_exact(g, s, budget);
        *status = match outcome {
            SolveOutcome::Sat { .. } => SepackStatus::Sat,
            SolveOutcome::Unsat { .. } => SepackStatus::Unsat,
            SolveOutcome::Unknown { .. } => SepackStatus::Unknown,
        };
        if !nodes.is_null() {
            *nodes = outcome.nodes();
        }
        if !coloring.is_null() {
            *coloring = outcome.coloring().map_or(ptr::null_mut(), |c| {
                Box::into_raw(Box::new(SepackColoring(c.clone())))
            });
        }
        Ok(())
    })
}

/// Runs the two-matching construction for `(1^2,2^4)` with default settings.
/// `method` and `coloring` may be null; `coloring` receives null on `Fail`.
///
/// # Safety
/// `g` must be a live handle; `status` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sepack_solve_pipeline(
    g: *const SepackGraph,
    seed: u64,
    status: *mut SepackStatus,
    method: *mut SepackMethod,
    coloring: *mut *mut SepackColoring,
) -> SepackError {
    guard(|| {
        let g = &get(g, "graph")?.0;
        if status.is_null() {
            return Err(null("status"));
        }
        let outcome = solve_pipeline(g, seed, &PipelineConfig::default())?;
        let (st, how) = match outcome {
            PipelineOutcome::Sat { .. } => (SepackStatus::Sat, SepackMethod::Pipeline),
            PipelineOutcome::Fallback { .. } => (SepackStatus::Sat, SepackMethod::Fallback),
            PipelineOutcome::Fail { .. } => (SepackStatus::Fail, SepackMethod::Fallback),
        };
        *status = st;
        if !method.is_null() {
            *method = how;
        }
        if !coloring.is_null() {
            *coloring = outcome.coloring().map_or(ptr::null_mut(), |c| {
                Box::into_raw(Box::new(SepackColoring(c.clone())))
            });
        }
        Ok(())
    })
}
