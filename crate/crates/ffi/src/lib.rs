//! C ABI for `regbound`.
//!
//! Every function returns an [`RbStatus`]; on failure a message for the
//! calling thread is available from [`rb_last_error_message`]. Graphs and
//! bound certificates are opaque handles owned by the caller and released
//! with their `_free` function. Strings returned by the library are released
//! with [`rb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use regbound::bound::{linear_bound, machine_bound, two_term_bound, BoundCertificate, Method};
use regbound::error::Error;
use regbound::graph::Graph;
use regbound::optimizer::{best_bound, optimize_nterm, OptimizerConfig};
use regbound::{atlas, graph6, spectra};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    Infeasible = 3,
    BudgetExceeded = 4,
    Graph6 = 5,
    NotRegular = 6,
    Disconnected = 7,
    UnknownName = 8,
    BufferTooSmall = 9,
    InvalidUtf8 = 10,
    Internal = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RbMethod {
    Linear = 0,
    TwoTerm = 1,
    Nterm = 2,
    Machine = 3,
    Best = 4,
}

/// Fixed-size view of a certificate.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default)]
pub struct RbCertificate {
    pub k: u32,
    pub z: f64,
    /// Method actually used, as an [`RbMethod`] value; `Best` resolves to one
    /// of the others. Downshift certificates report as `Nterm`.
    pub method: u32,
    /// Index of the shifted certificate, 0 when not applicable.
    pub m: u32,
    /// Shift, NaN when not applicable.
    pub s: f64,
    pub m1: f64,
    pub m2: f64,
    pub c0: f64,
    pub vertex_bound: f64,
    pub vertex_bound_int: u64,
    /// Number of coefficients returned by [`rb_bound_coeffs`].
    pub coeff_count: usize,
}

/// A simple undirected graph.
pub struct RbGraph {
    inner: Graph,
}

/// A certified vertex bound.
pub struct RbBound {
    inner: BoundCertificate,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> RbStatus {
    match e {
        Error::InvalidParameter(_) => RbStatus::InvalidParameter,
        Error::InfeasibleCertificate(_) | Error::NoFeasiblePoint { .. } => RbStatus::Infeasible,
        Error::DisconnectedGraph => RbStatus::Disconnected,
        Error::NotRegular => RbStatus::NotRegular,
        Error::UnknownName(_) => RbStatus::UnknownName,
        Error::Graph6 { .. } => RbStatus::Graph6,
        Error::BudgetExceeded { .. } => RbStatus::BudgetExceeded,
        _ => RbStatus::Internal,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (RbStatus, String)>) -> RbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RbStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside regbound".into());
            RbStatus::Panic
        }
    }
}

type Fail = (RbStatus, String);

fn lib_err(e: Error) -> Fail {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> Fail {
    (RbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (RbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn copy_out(values: &[f64], buf: *mut f64, cap: usize, len: *mut usize) -> Result<(), Fail> {
    if len.is_null() {
        return Err(null("len"));
    }
    *len = values.len();
    if cap < values.len() {
        return Err((RbStatus::BufferTooSmall, format!("need room for {} values, got {cap}", values.len())));
    }
    if !values.is_empty() {
        if buf.is_null() {
            return Err(null("buf"));
        }
        ptr::copy_nonoverlapping(values.as_ptr(), buf, values.len());
    }
    Ok(())
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rb_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_from_graph6(text: *const c_char, out: *mut *mut RbGraph) -> RbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let g = graph6::decode(read_str(text, "text")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RbGraph { inner: g }));
        Ok(())
    })
}

/// Looks up a named graph such as `"petersen"`, `"K5"` or `"circulant(7;1,2)"`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_from_atlas(name: *const c_char, out: *mut *mut RbGraph) -> RbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let e = atlas::atlas_graph(read_str(name, "name")?).map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RbGraph { inner: e.graph }));
        Ok(())
    })
}

/// # Safety
/// `g` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_free(g: *mut RbGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_vertex_count(g: *const RbGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// Adjacency eigenvalues in decreasing order. `*len` is always set to the
/// vertex count; fails with `BufferTooSmall` when `cap` is less.
///
/// # Safety
/// `g` must be a live handle, `buf` valid for `cap` writes, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_spectrum(g: *const RbGraph, buf: *mut f64, cap: usize, len: *mut usize) -> RbStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        copy_out(&spectra::adjacency_spectrum(&g.inner).values, buf, cap, len)
    })
}

/// Second largest adjacency eigenvalue of a connected graph.
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_mu1(g: *const RbGraph, out: *mut f64) -> RbStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = spectra::mu1(&g.inner).map_err(lib_err)?;
        Ok(())
    })
}

/// graph6 text of the graph; release with [`rb_string_free`].
///
/// # Safety
/// `g` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rb_graph_to_graph6(g: *const RbGraph, out: *mut *mut c_char) -> RbStatus {
    guard(|| {
        let g = g.as_ref().ok_or_else(|| null("graph"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CString::new(graph6::encode(&g.inner)).map_err(|e| (RbStatus::Internal, e.to_string()))?;
        *out = s.into_raw();
        Ok(())
    })
}

/// Certified bound on the vertex count of a connected `k`-regular graph with
/// second eigenvalue at most `z`. `terms` and `seed` only affect `Nterm` and
/// `Best`; pass 0 for the defaults.
///
/// # Safety
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn rb_bound_compute(
    k: u32,
    z: f64,
    method: RbMethod,
    terms: usize,
    seed: u64,
    out: *mut *mut RbBound,
) -> RbStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let mut cfg = OptimizerConfig::default();
        if terms > 0 {
            cfg.terms = terms;
        }
        if seed != 0 {
            cfg.seed = seed;
        }
        let cert = match method {
            RbMethod::Linear => linear_bound(k, z),
            RbMethod::TwoTerm => two_term_bound(k, z, None),
            RbMethod::Nterm => optimize_nterm(k, z, &cfg),
            RbMethod::Machine => machine_bound(k, z, None, None),
            RbMethod::Best => best_bound(k, z, &cfg),
        }
        .map_err(lib_err)?;
        *out = Box::into_raw(Box::new(RbBound { inner: cert }));
        Ok(())
    })
}

/// # Safety
/// `b` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn rb_bound_summary(b: *const RbBound, out: *mut RbCertificate) -> RbStatus {
    guard(|| {
        let b = &b.as_ref().ok_or_else(|| null("bound"))?.inner;
        if out.is_null() {
            return Err(null("out"));
        }
        let method = match b.method {
            Method::Linear => RbMethod::Linear,
            Method::TwoTerm => RbMethod::TwoTerm,
            Method::Nterm | Method::Downshift => RbMethod::Nterm,
            Method::Machine => RbMethod::Machine,
        };
        *out = RbCertificate {
            k: b.k,
            z: b.z,
            method: method as u32,
            m: b.m.unwrap_or(0),
            s: b.s.unwrap_or(f64::NAN),
            m1: b.m1,
            m2: b.m2,
            c0: b.c0,
            vertex_bound: b.vertex_bound,
            vertex_bound_int: b.vertex_bound_int,
            coeff_count: b.f.coeffs().len(),
        };
        Ok(())
    })
}

/// Coefficients `a_0, a_1, ...` of the certificate `sum a_j V_j`.
///
/// # Safety
/// `b` must be a live handle, `buf` valid for `cap` writes, `len` valid.
#[no_mangle]
pub unsafe extern "C" fn rb_bound_coeffs(b: *const RbBound, buf: *mut f64, cap: usize, len: *mut usize) -> RbStatus {
    guard(|| {
        let b = b.as_ref().ok_or_else(|| null("bound"))?;
        copy_out(b.inner.f.coeffs(), buf, cap, len)
    })
}

/// # Safety
/// `b` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn rb_bound_free(b: *mut RbBound) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}
