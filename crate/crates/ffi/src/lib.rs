//! C ABI over `fsts-core`.
//!
//! Hypergraphs are opaque handles. Every fallible call returns an
//! [`FstsStatus`]; on failure the message is available from
//! [`fsts_last_error`] on the same thread. Strings handed out by this
//! library must be released with [`fsts_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fsts_core::hypergraph::format::parse_hg;
use fsts_core::lp::{build_fsts_lp, solve_feasibility, ConstraintMode, LpStatus};
use fsts_core::threshold::{maximize_p3, maximize_p4, maximize_p5, root_xstar, w5_eval};
use fsts_core::weighting::{nonnegativity_check, weighting_w_h};
use fsts_core::{Error, Hypergraph};

/// Opaque hypergraph handle.
pub struct FstsHypergraph(Hypergraph);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FstsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    Precondition = 4,
    Infeasible = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct FstsCodegreeStats {
    pub min_codegree: usize,
    /// Only meaningful when `has_essential` is true (non-empty shadow).
    pub essential_min_codegree: usize,
    pub has_essential: bool,
    pub shadow_size: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(err: &Error) -> FstsStatus {
    match err {
        Error::Parse { .. } | Error::Io(_) | Error::Json(_) => FstsStatus::ParseError,
        e if e.is_precondition() => FstsStatus::Precondition,
        _ => FstsStatus::InvalidArgument,
    }
}

fn fail(err: Error) -> FstsStatus {
    set_error(err.to_string());
    status_of(&err)
}

/// Runs `body`, converting panics into `Internal`.
fn guard(body: impl FnOnce() -> FstsStatus) -> FstsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(_) => {
            set_error("internal panic");
            FstsStatus::Internal
        }
    }
}

fn null(what: &str) -> FstsStatus {
    set_error(format!("{what} is null"));
    FstsStatus::NullPointer
}

unsafe fn write_string(out: *mut *mut c_char, text: String) {
    *out = CString::new(text).expect("JSON has no nul").into_raw();
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn fsts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds an `r`-uniform hypergraph on `n` vertices from `edge_count` edges
/// stored row-major in `edges` (`edge_count * r` vertex ids).
///
/// # Safety
/// `edges` must point to `edge_count * r` readable `u32`s (or be null when
/// `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_hypergraph_new(
    r: usize,
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut FstsHypergraph,
) -> FstsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        if edges.is_null() && edge_count > 0 {
            return null("edges");
        }
        let flat: &[u32] = if edge_count == 0 || r == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(edges, edge_count * r)
        };
        let chunks: Vec<&[u32]> = if r == 0 { Vec::new() } else { flat.chunks(r).collect() };
        match Hypergraph::new(r, n, chunks) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(FstsHypergraph(h)));
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Parses the `.hg` text format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_hypergraph_parse(
    text: *const c_char,
    out: *mut *mut FstsHypergraph,
) -> FstsStatus {
    guard(|| {
        if text.is_null() {
            return null("text");
        }
        if out.is_null() {
            return null("out");
        }
        let Ok(text) = CStr::from_ptr(text).to_str() else {
            set_error("text is not valid UTF-8");
            return FstsStatus::ParseError;
        };
        match parse_hg(text) {
            Ok(h) => {
                *out = Box::into_raw(Box::new(FstsHypergraph(h)));
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must come from this library and not be used afterwards. Null is
/// ignored.
#[no_mangle]
pub unsafe extern "C" fn fsts_hypergraph_free(h: *mut FstsHypergraph) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn fsts_hypergraph_vertex_count(h: *const FstsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.vertex_count())
}

/// # Safety
/// `h` must be a live handle or null (which yields 0).
#[no_mangle]
pub unsafe extern "C" fn fsts_hypergraph_edge_count(h: *const FstsHypergraph) -> usize {
    h.as_ref().map_or(0, |h| h.0.edge_count())
}

/// # Safety
/// `h` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_hypergraph_codegree(
    h: *const FstsHypergraph,
    out: *mut FstsCodegreeStats,
) -> FstsStatus {
    guard(|| {
        let Some(h) = h.as_ref() else { return null("h") };
        if out.is_null() {
            return null("out");
        }
        let s = h.0.codegree_stats();
        *out = FstsCodegreeStats {
            min_codegree: s.min_codegree,
            essential_min_codegree: s.essential_min_codegree.unwrap_or(0),
            has_essential: s.essential_min_codegree.is_some(),
            shadow_size: s.shadow_size,
        };
        FstsStatus::Ok
    })
}

/// The weighting `w_H` as `{"edges": [...], "weights": ["p/q", ...]}`.
///
/// # Safety
/// `h` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_weighting_json(
    h: *const FstsHypergraph,
    out_json: *mut *mut c_char,
) -> FstsStatus {
    guard(|| {
        let Some(h) = h.as_ref() else { return null("h") };
        if out_json.is_null() {
            return null("out_json");
        }
        match weighting_w_h(&h.0) {
            Ok(w) => {
                write_string(out_json, w.to_json());
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Pair degrees and ordered-weight signs of `w_H` as JSON; `verdict` is set
/// to whether `w_H` is a perfect fractional Steiner triple system.
///
/// # Safety
/// `h` must be a live handle; `out_json` and `verdict` writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_nonnegativity_json(
    h: *const FstsHypergraph,
    out_json: *mut *mut c_char,
    verdict: *mut bool,
) -> FstsStatus {
    guard(|| {
        let Some(h) = h.as_ref() else { return null("h") };
        if out_json.is_null() || verdict.is_null() {
            return null("output pointer");
        }
        match nonnegativity_check(&h.0) {
            Ok(report) => {
                *verdict = report.verdict;
                write_string(
                    out_json,
                    serde_json::to_string(&report).expect("reports serialize"),
                );
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Solves the fractional Steiner system LP. Returns `Ok` when feasible and
/// `Infeasible` otherwise; in both cases `out_json` receives the outcome
/// with its witness or certificate.
///
/// # Safety
/// `h` must be a live handle and `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_lp_solve_json(
    h: *const FstsHypergraph,
    all_tuples: bool,
    out_json: *mut *mut c_char,
) -> FstsStatus {
    guard(|| {
        let Some(h) = h.as_ref() else { return null("h") };
        if out_json.is_null() {
            return null("out_json");
        }
        let mode = if all_tuples {
            ConstraintMode::AllTuples
        } else {
            ConstraintMode::ShadowOnly
        };
        let outcome = solve_feasibility(&build_fsts_lp(&h.0, mode));
        write_string(
            out_json,
            serde_json::to_string(&outcome).expect("outcomes serialize"),
        );
        match outcome.status {
            LpStatus::Feasible => FstsStatus::Ok,
            LpStatus::Infeasible => FstsStatus::Infeasible,
        }
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn fsts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// The root `x*` of `8x³ - 22x² + 10x - 1` on `[0, 1/6]`, to within `tol`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_root_xstar(tol: f64, out: *mut f64) -> FstsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match root_xstar(tol) {
            Ok(r) => {
                *out = r.x_star;
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_w5_eval(d: f64, f: f64, out: *mut f64) -> FstsStatus {
    guard(|| {
        if out.is_null() {
            return null("out");
        }
        match w5_eval(d, f) {
            Ok(v) => {
                *out = v;
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `f` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_maximize_p5(d: f64, f: *mut f64, value: *mut f64) -> FstsStatus {
    guard(|| {
        if f.is_null() || value.is_null() {
            return null("output pointer");
        }
        match maximize_p5(d) {
            Ok(r) => {
                *f = r.f;
                *value = r.value;
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `e0`, `f` and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_maximize_p4(
    d: f64,
    e0: *mut f64,
    f: *mut f64,
    value: *mut f64,
) -> FstsStatus {
    guard(|| {
        if e0.is_null() || f.is_null() || value.is_null() {
            return null("output pointer");
        }
        match maximize_p4(d) {
            Ok(r) => {
                *e0 = r.e0;
                *f = r.f;
                *value = r.value;
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Writes the maximizer as `e0, e, f, q0, q, p, r0, r` into `point`.
///
/// # Safety
/// `point` must have room for 8 doubles and `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fsts_maximize_p3(
    d: f64,
    seed: u64,
    point: *mut f64,
    value: *mut f64,
) -> FstsStatus {
    guard(|| {
        if point.is_null() || value.is_null() {
            return null("output pointer");
        }
        match maximize_p3(d, seed) {
            Ok(r) => {
                let p = r.point;
                let coords = [p.e0, p.e, p.f, p.q0, p.q, p.p, p.r0, p.r];
                std::slice::from_raw_parts_mut(point, 8).copy_from_slice(&coords);
                *value = r.value;
                FstsStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}
