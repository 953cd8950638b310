//! C ABI over the core library: opaque graph handles, integer status
//! codes, and a thread-local error message. Every entry point catches
//! panics, so the boundary never unwinds into foreign frames.
//!
//! Ownership rules: `gn_graph_parse` allocates a handle released by
//! `gn_graph_free`; the pointer from `gn_last_error_message` is borrowed
//! and valid until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use graphnorm::document::{parse_graph, DocumentError};
use graphnorm::manifold::DecoratedGraph;
use graphnorm::norms::{
    smallest_admissible_modulus, thurston_norm, verify_norm_equality, AlphaSpec, NormError,
    SigmaSpec,
};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GnStatus {
    GnOk = 0,
    /// A required pointer argument was null.
    GnErrNull = 1,
    /// Input text was not valid UTF-8.
    GnErrUtf8 = 2,
    /// Input text was not valid JSON.
    GnErrParse = 3,
    /// JSON was well formed but violated the document schema.
    GnErrSchema = 4,
    /// The graph does not present a composite manifold.
    GnErrNotComposite = 5,
    /// The twisted complex failed the acyclicity requirement.
    GnErrNotAcyclic = 6,
    /// The character modulus was smaller than 2.
    GnErrBadModulus = 7,
    /// Value counts or class data did not match the graph.
    GnErrValidation = 8,
    /// An internal invariant failed; the operation was abandoned safely.
    GnErrPanic = 9,
}

/// Opaque handle to a parsed decorated graph.
pub struct GnGraph {
    inner: DecoratedGraph,
}

/// Norm comparison, mirroring the library report. `torsion_width` is
/// meaningful only when `acyclic` is true.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct GnNormReport {
    pub thurston: i64,
    pub torsion_width: i64,
    pub equal: bool,
    pub acyclic: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized: String = message.chars().filter(|c| *c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).expect("nul bytes stripped");
    });
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = CString::default());
}

/// Message for the most recent failure on this thread, empty after a
/// success. Borrowed; valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn gn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

fn document_status(err: &DocumentError) -> GnStatus {
    match err {
        DocumentError::Parse { .. } => GnStatus::GnErrParse,
        DocumentError::Schema { .. } => GnStatus::GnErrSchema,
    }
}

fn norm_status(err: &NormError) -> GnStatus {
    match err {
        NormError::NotComposite { .. } => GnStatus::GnErrNotComposite,
        NormError::NotAcyclic { .. } => GnStatus::GnErrNotAcyclic,
        NormError::BadModulus(_) => GnStatus::GnErrBadModulus,
        _ => GnStatus::GnErrValidation,
    }
}

/// Runs `body` with unwind protection, routing both error statuses and
/// panics through the thread-local message slot.
fn guarded(body: impl FnOnce() -> Result<(), (GnStatus, String)>) -> GnStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            clear_error();
            GnStatus::GnOk
        }
        Ok(Err((status, message))) => {
            set_error(&message);
            status
        }
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "internal error".to_string());
            set_error(&message);
            GnStatus::GnErrPanic
        }
    }
}

fn null_err<T>() -> Result<T, (GnStatus, String)> {
    Err((GnStatus::GnErrNull, "null pointer argument".to_string()))
}

unsafe fn graph_ref<'a>(g: *const GnGraph) -> Result<&'a DecoratedGraph, (GnStatus, String)> {
    match g.as_ref() {
        Some(handle) => Ok(&handle.inner),
        None => null_err(),
    }
}

unsafe fn slice_arg<'a>(
    ptr: *const i64,
    len: usize,
) -> Result<&'a [i64], (GnStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return null_err();
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

/// Parses a graph document (JSON, UTF-8, nul-terminated) into a new
/// handle. On success stores the handle in `out`; the caller owns it and
/// must release it with `gn_graph_free`.
///
/// # Safety
/// `json` must point to a nul-terminated string and `out` to writable
/// pointer storage.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_parse(
    json: *const c_char,
    out: *mut *mut GnGraph,
) -> GnStatus {
    guarded(|| {
        if json.is_null() || out.is_null() {
            return null_err();
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|e| (GnStatus::GnErrUtf8, e.to_string()))?;
        let graph =
            parse_graph(text).map_err(|e| (document_status(&e), e.to_string()))?;
        *out = Box::into_raw(Box::new(GnGraph { inner: graph }));
        Ok(())
    })
}

/// Releases a handle from `gn_graph_parse`. Null is ignored.
///
/// # Safety
/// `graph` must be null or a pointer returned by `gn_graph_parse` that
/// has not been freed already.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_free(graph: *mut GnGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Number of blocks in the graph.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_block_count(
    graph: *const GnGraph,
    out: *mut u32,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        if out.is_null() {
            return null_err();
        }
        *out = g.blocks().len() as u32;
        Ok(())
    })
}

/// Number of gluing tori in the graph.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_torus_count(
    graph: *const GnGraph,
    out: *mut u32,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        if out.is_null() {
            return null_err();
        }
        *out = g.tori().len() as u32;
        Ok(())
    })
}

/// Whether the graph presents a composite manifold (reduced, connected,
/// all block surfaces of negative Euler characteristic).
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_is_composite(
    graph: *const GnGraph,
    out: *mut bool,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        if out.is_null() {
            return null_err();
        }
        *out = g.classify().composite;
        Ok(())
    })
}

/// First Betti number of the presented manifold.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_first_betti(
    graph: *const GnGraph,
    out: *mut u64,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        if out.is_null() {
            return null_err();
        }
        *out = g.homology_h1().group().free_rank() as u64;
        Ok(())
    })
}

/// Smallest modulus d >= 2 coprime to every fibre-intersection number.
/// Fails with `GnErrValidation` when no such modulus exists (some
/// intersection number is zero).
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_graph_smallest_modulus(
    graph: *const GnGraph,
    out: *mut i64,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        if out.is_null() {
            return null_err();
        }
        match smallest_admissible_modulus(g) {
            Some(d) => {
                *out = d;
                Ok(())
            }
            None => Err((
                GnStatus::GnErrValidation,
                "a fibre-intersection number is zero".to_string(),
            )),
        }
    })
}

/// Thurston norm of the class with the given fibre values, one per block
/// in ascending block-id order.
///
/// # Safety
/// `graph` must be a live handle, `fibre_values` must point to `len`
/// integers, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_thurston_norm(
    graph: *const GnGraph,
    fibre_values: *const i64,
    len: usize,
    out: *mut i64,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        let values = slice_arg(fibre_values, len)?;
        if out.is_null() {
            return null_err();
        }
        let norm = thurston_norm(g, &SigmaSpec::FibreValues(values.to_vec()))
            .map_err(|e| (norm_status(&e), e.to_string()))?;
        *out = norm;
        Ok(())
    })
}

/// Thurston norm, twisted-torsion width, and their comparison for the
/// class with fibre values `sigma` and the mod-`modulus` character with
/// fibre residues `alpha` (both one value per block, ascending block-id
/// order). Acyclicity failure is reported in the result, not as an error.
///
/// # Safety
/// `graph` must be a live handle, the two arrays must hold `sigma_len`
/// and `alpha_len` integers, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gn_norm_report(
    graph: *const GnGraph,
    sigma: *const i64,
    sigma_len: usize,
    modulus: i64,
    alpha: *const i64,
    alpha_len: usize,
    out: *mut GnNormReport,
) -> GnStatus {
    guarded(|| {
        let g = graph_ref(graph)?;
        let sigma_values = slice_arg(sigma, sigma_len)?;
        let alpha_values = slice_arg(alpha, alpha_len)?;
        if out.is_null() {
            return null_err();
        }
        let report = verify_norm_equality(
            g,
            &SigmaSpec::FibreValues(sigma_values.to_vec()),
            &AlphaSpec::FibreValues {
                modulus,
                values: alpha_values.to_vec(),
            },
        )
        .map_err(|e| (norm_status(&e), e.to_string()))?;
        *out = GnNormReport {
            thurston: report.thurston,
            torsion_width: report.torsion_width.as_finite().unwrap_or(0),
            equal: report.equal,
            acyclic: report.acyclic,
        };
        Ok(())
    })
}
