//! C ABI over the mincayley library.
//!
//! Groups and graphs are opaque handles owned by the caller and released
//! with the matching `*_free` function. Every fallible call returns an
//! [`McStatus`]; on failure a description is kept per thread and can be read
//! with [`mc_last_error_message`]. Strings returned through out-pointers must
//! be released with [`mc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::time::Duration;

use mincayley::chromatic::{chromatic_number, max_clique, SolveBudget};
use mincayley::graph::{cayley_graph, decode_json, encode_json};
use mincayley::{make_group, Error, FiniteGroup, Graph};

/// Result codes shared by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    /// A size guard was exceeded (group order, clique size, ...).
    Guard = 4,
    Invalid = 5,
    /// A structural precondition does not hold for the input.
    Precondition = 6,
    /// The time or node budget ran out before an exact answer.
    Budget = 7,
    Io = 8,
    /// A Rust panic was caught at the boundary.
    Internal = 9,
}

/// Opaque finite group.
pub struct McGroup(FiniteGroup);

/// Opaque simple undirected graph.
pub struct McGraph(Graph);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> McStatus {
    match e {
        Error::Parse { .. } => McStatus::Parse,
        Error::Guard { .. } => McStatus::Guard,
        Error::Invalid(_) | Error::Table { .. } => McStatus::Invalid,
        Error::BudgetExhausted { .. } | Error::SearchBudget { .. } | Error::CycleCeiling(_) => McStatus::Budget,
        Error::Io(_) => McStatus::Io,
        _ => McStatus::Precondition,
    }
}

fn fail(status: McStatus, msg: impl Into<String>) -> McStatus {
    set_error(msg.into());
    status
}

/// Runs `f`, recording the error message and mapping panics to `Internal`.
fn guarded(f: impl FnOnce() -> Result<(), McStatus>) -> McStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => fail(McStatus::Internal, "panic inside mincayley"),
    }
}

fn lib<T>(r: mincayley::Result<T>) -> Result<T, McStatus> {
    r.map_err(|e| fail(status_of(&e), e.to_string()))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, McStatus> {
    if p.is_null() {
        return Err(fail(McStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(McStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, McStatus> {
    p.as_ref().ok_or_else(|| fail(McStatus::NullPointer, format!("{what} is null")))
}

fn out<T>(p: *mut T, what: &str) -> Result<(), McStatus> {
    if p.is_null() {
        Err(fail(McStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn mc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a group from a spec such as `dicyclic:32` or `prod:(cyclic:2)x(cyclic:4)`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out_group` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_group_new(spec: *const c_char, out_group: *mut *mut McGroup) -> McStatus {
    guarded(|| {
        out(out_group, "out_group")?;
        let g = lib(make_group(text(spec, "spec")?))?;
        *out_group = Box::into_raw(Box::new(McGroup(g)));
        Ok(())
    })
}

/// # Safety
/// `group` must come from [`mc_group_new`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mc_group_free(group: *mut McGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Order of the group, or 0 for a null handle.
///
/// # Safety
/// `group` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_group_order(group: *const McGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.order())
}

/// Cayley graph of `group` for a comma separated list of elements in the
/// group's own notation, e.g. `"(1,0),(0,1)"`.
///
/// # Safety
/// `group` must be a live handle, `gens` a nul-terminated string and
/// `out_graph` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_cayley_graph(
    group: *const McGroup,
    gens: *const c_char,
    out_graph: *mut *mut McGraph,
) -> McStatus {
    guarded(|| {
        out(out_graph, "out_graph")?;
        let g = &handle(group, "group")?.0;
        let c = lib(g.parse_elements(text(gens, "gens")?))?;
        let graph = lib(cayley_graph(g, &c))?;
        *out_graph = Box::into_raw(Box::new(McGraph(graph)));
        Ok(())
    })
}

/// Reads a graph from the JSON edge-list format used by the CLI.
///
/// # Safety
/// `json` must be a nul-terminated string and `out_graph` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_from_json(json: *const c_char, out_graph: *mut *mut McGraph) -> McStatus {
    guarded(|| {
        out(out_graph, "out_graph")?;
        let (graph, _) = lib(decode_json(text(json, "json")?))?;
        *out_graph = Box::into_raw(Box::new(McGraph(graph)));
        Ok(())
    })
}

/// # Safety
/// `graph` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_free(graph: *mut McGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_vertex_count(graph: *const McGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.n())
}

/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_edge_count(graph: *const McGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Serializes the graph as JSON. Release the string with [`mc_string_free`].
///
/// # Safety
/// `graph` must be a live handle and `out_json` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_graph_to_json(graph: *const McGraph, out_json: *mut *mut c_char) -> McStatus {
    guarded(|| {
        out(out_json, "out_json")?;
        let g = &handle(graph, "graph")?.0;
        let s = CString::new(encode_json(g, None)).map_err(|_| fail(McStatus::Internal, "nul in JSON"))?;
        *out_json = s.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact chromatic number within `time_limit_secs`.
///
/// On success `*lower == *upper == chi`, and if `coloring` is not null it
/// receives one color per vertex (it must hold `mc_graph_vertex_count`
/// entries). When the budget runs out the call returns `Budget` and still
/// writes the proven bounds.
///
/// # Safety
/// `graph` must be a live handle, `lower` and `upper` writable, and
/// `coloring` null or valid for `mc_graph_vertex_count(graph)` writes.
#[no_mangle]
pub unsafe extern "C" fn mc_chromatic_number(
    graph: *const McGraph,
    time_limit_secs: f64,
    lower: *mut usize,
    upper: *mut usize,
    coloring: *mut usize,
) -> McStatus {
    guarded(|| {
        out(lower, "lower")?;
        out(upper, "upper")?;
        let g = &handle(graph, "graph")?.0;
        if !(time_limit_secs.is_finite() && time_limit_secs >= 0.0) {
            return Err(fail(McStatus::Invalid, "time limit must be a non-negative number"));
        }
        let budget = SolveBudget {
            time_limit: Duration::from_secs_f64(time_limit_secs),
            ..SolveBudget::default()
        };
        match chromatic_number(g, budget) {
            Ok((chi, col)) => {
                *lower = chi;
                *upper = chi;
                if !coloring.is_null() {
                    ptr::copy_nonoverlapping(col.colors().as_ptr(), coloring, col.len());
                }
                Ok(())
            }
            Err(Error::BudgetExhausted { lower: lo, upper: hi }) => {
                *lower = lo;
                *upper = hi;
                Err(fail(McStatus::Budget, format!("chromatic number lies in [{lo}, {hi}]")))
            }
            Err(e) => lib(Err(e)),
        }
    })
}

/// Clique number of the graph.
///
/// # Safety
/// `graph` must be a live handle and `omega` writable.
#[no_mangle]
pub unsafe extern "C" fn mc_clique_number(graph: *const McGraph, omega: *mut usize) -> McStatus {
    guarded(|| {
        out(omega, "omega")?;
        let g = &handle(graph, "graph")?.0;
        *omega = lib(max_clique(g))?.len();
        Ok(())
    })
}
