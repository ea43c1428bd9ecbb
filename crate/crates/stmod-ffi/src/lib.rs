//! C ABI for the `stmod` library.
//!
//! Conventions: every constructor hands back an opaque handle through an
//! out-parameter and returns a [`StmodStatus`]; handles are freed with the
//! matching `*_free` function; strings returned through out-parameters are
//! NUL-terminated, owned by the caller, and released with
//! [`stmod_string_free`]. On any non-OK status a thread-local message is
//! available via [`stmod_last_error`] until the next failing call on the
//! same thread. Panics never cross the boundary; they surface as
//! `STMOD_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use stmod::algebra::GroupAlgebra;
use stmod::module::{stable_hom, KGModule};

/// Status code returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StmodStatus {
    /// Success.
    Ok = 0,
    /// Invalid argument (bad modulus, malformed JSON, out-of-range bound).
    Invalid = 1,
    /// A mathematical verification failed or a search found nothing.
    Math = 2,
    /// A required pointer argument was NULL.
    NullPointer = 3,
    /// An internal panic was caught at the boundary.
    Panic = 4,
    /// A string argument was not valid UTF-8.
    Utf8 = 5,
}

/// Opaque handle to a group algebra `k[X_1..X_r]/(X_i^{e_i})`.
pub struct StmodAlgebra {
    inner: Arc<GroupAlgebra>,
}

/// Opaque handle to a finite-dimensional module over a group algebra.
pub struct StmodModule {
    inner: Arc<KGModule>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn fail(status: StmodStatus, message: &str) -> StmodStatus {
    set_error(message);
    status
}

fn from_error(e: &stmod::Error) -> StmodStatus {
    match e {
        stmod::Error::NoIsomorphismFound(_)
        | stmod::Error::ConstraintUnsolvable(_)
        | stmod::Error::LiftFailed { .. } => fail(StmodStatus::Math, &e.to_string()),
        _ => fail(StmodStatus::Invalid, &e.to_string()),
    }
}

fn guard(body: impl FnOnce() -> StmodStatus) -> StmodStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(status) => status,
        Err(payload) => {
            let message = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            fail(StmodStatus::Panic, &message)
        }
    }
}

/// Message for the most recent failure on this thread. Never NULL; the
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn stmod_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must have been produced by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn stmod_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the algebra with the given prime and generator exponents.
///
/// # Safety
/// `exponents` must point to `len` readable `uint32_t`s; `out` must be a
/// valid writable pointer.
#[no_mangle]
pub unsafe extern "C" fn stmod_algebra_new(
    p: u32,
    exponents: *const u32,
    len: usize,
    out: *mut *mut StmodAlgebra,
) -> StmodStatus {
    if exponents.is_null() || out.is_null() {
        return fail(StmodStatus::NullPointer, "null argument");
    }
    let exps = std::slice::from_raw_parts(exponents, len).to_vec();
    guard(|| match GroupAlgebra::new(p, exps.clone()) {
        Ok(alg) => {
            *out = Box::into_raw(Box::new(StmodAlgebra { inner: alg }));
            StmodStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}

/// # Safety
/// `handle` must come from `stmod_algebra_new` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn stmod_algebra_free(handle: *mut StmodAlgebra) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the algebra, 0 on a NULL handle.
///
/// # Safety
/// `handle` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn stmod_algebra_dim(handle: *const StmodAlgebra) -> usize {
    handle.as_ref().map_or(0, |h| h.inner.dim())
}

unsafe fn module_out(out: *mut *mut StmodModule, module: Arc<KGModule>) -> StmodStatus {
    *out = Box::into_raw(Box::new(StmodModule { inner: module }));
    StmodStatus::Ok
}

/// The one-dimensional trivial module.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_trivial(
    algebra: *const StmodAlgebra,
    out: *mut *mut StmodModule,
) -> StmodStatus {
    let (Some(algebra), false) = (algebra.as_ref(), out.is_null()) else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(|| module_out(out, KGModule::trivial(&algebra.inner)))
}

/// The regular module on the monomial basis.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_regular(
    algebra: *const StmodAlgebra,
    out: *mut *mut StmodModule,
) -> StmodStatus {
    let (Some(algebra), false) = (algebra.as_ref(), out.is_null()) else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(|| module_out(out, KGModule::regular(&algebra.inner)))
}

/// Parses a module fixture (`{"algebra":...,"dim":...,"actions":[...]}`);
/// the invariants are re-verified before the handle is produced.
///
/// # Safety
/// `json` must be NUL-terminated; `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_from_json(
    json: *const c_char,
    out: *mut *mut StmodModule,
) -> StmodStatus {
    if json.is_null() || out.is_null() {
        return fail(StmodStatus::NullPointer, "null argument");
    }
    let Ok(text) = CStr::from_ptr(json).to_str() else {
        return fail(StmodStatus::Utf8, "module JSON is not UTF-8");
    };
    guard(|| match serde_json::from_str::<KGModule>(text) {
        Ok(module) => module_out(out, Arc::new(module)),
        Err(e) => fail(StmodStatus::Invalid, &e.to_string()),
    })
}

/// Serializes a module to its JSON fixture form.
///
/// # Safety
/// Pointers must be valid; free the string with `stmod_string_free`.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_to_json(
    module: *const StmodModule,
    out: *mut *mut c_char,
) -> StmodStatus {
    let (Some(module), false) = (module.as_ref(), out.is_null()) else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(|| match serde_json::to_string(&*module.inner) {
        Ok(json) => match CString::new(json) {
            Ok(c) => {
                *out = c.into_raw();
                StmodStatus::Ok
            }
            Err(_) => fail(StmodStatus::Invalid, "embedded NUL"),
        },
        Err(e) => fail(StmodStatus::Invalid, &e.to_string()),
    })
}

/// # Safety
/// `handle` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_free(handle: *mut StmodModule) {
    if !handle.is_null() {
        drop(Box::from_raw(handle));
    }
}

/// Dimension of the module, 0 on a NULL handle.
///
/// # Safety
/// `handle` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_dim(handle: *const StmodModule) -> usize {
    handle.as_ref().map_or(0, |m| m.inner.dim())
}

/// Number of free direct summands (the rank of the socle action).
///
/// # Safety
/// `handle` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_free_rank(handle: *const StmodModule) -> usize {
    handle.as_ref().map_or(0, |m| m.inner.free_rank())
}

/// # Safety
/// `handle` must be valid or NULL.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_is_projective(handle: *const StmodModule) -> bool {
    handle.as_ref().is_some_and(|m| m.inner.is_projective())
}

/// Iterated syzygy `Ω^n` (negative `n` for cosyzygies, 0 for the
/// projective-free core).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_module_omega(
    module: *const StmodModule,
    n: i64,
    out: *mut *mut StmodModule,
) -> StmodStatus {
    let (Some(module), false) = (module.as_ref(), out.is_null()) else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(|| module_out(out, module.inner.omega_n(n)))
}

/// Dimension of the stable hom space `Hom(M, N) / PHom(M, N)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_stable_hom_dim(
    source: *const StmodModule,
    target: *const StmodModule,
    out: *mut usize,
) -> StmodStatus {
    let (Some(source), Some(target), false) = (source.as_ref(), target.as_ref(), out.is_null())
    else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(|| match stable_hom(&source.inner, &target.inner) {
        Ok(space) => {
            *out = space.stable_dim();
            StmodStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}

/// Endomorphism ring table of the trivial module in degrees `0..-bound`,
/// serialized as JSON.
///
/// # Safety
/// Pointers must be valid; free the string with `stmod_string_free`.
#[no_mangle]
pub unsafe extern "C" fn stmod_endo_table_json(
    h: *const StmodAlgebra,
    bound: usize,
    out: *mut *mut c_char,
) -> StmodStatus {
    let (Some(h), false) = (h.as_ref(), out.is_null()) else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(|| match stmod::tate::endo_ring_table(&h.inner, bound) {
        Ok(table) => match CString::new(serde_json::to_string(&table).unwrap_or_default()) {
            Ok(c) => {
                *out = c.into_raw();
                StmodStatus::Ok
            }
            Err(_) => fail(StmodStatus::Invalid, "embedded NUL"),
        },
        Err(e) => from_error(&e),
    })
}

/// Pi-point support report of a module over an elementary abelian algebra,
/// serialized as JSON; `max_degree` selects the extension-field point set
/// (1 or 2).
///
/// # Safety
/// Pointers must be valid; free the string with `stmod_string_free`.
#[no_mangle]
pub unsafe extern "C" fn stmod_support_report_json(
    module: *const StmodModule,
    max_degree: u32,
    out: *mut *mut c_char,
) -> StmodStatus {
    let (Some(module), false) = (module.as_ref(), out.is_null()) else {
        return fail(StmodStatus::NullPointer, "null argument");
    };
    guard(
        || match stmod::tate::support_report(&module.inner, max_degree) {
            Ok(report) => match CString::new(serde_json::to_string(&report).unwrap_or_default()) {
                Ok(c) => {
                    *out = c.into_raw();
                    StmodStatus::Ok
                }
                Err(_) => fail(StmodStatus::Invalid, "embedded NUL"),
            },
            Err(e) => from_error(&e),
        },
    )
}

/// Verifies exactness of the canonical sequence for `H` with the given
/// exponents inside `G = H x C_p`. Writes the verdict to `pass`.
///
/// # Safety
/// `h_exponents` must point to `len` readable values; `pass` must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_verify_canon_seq(
    p: u32,
    h_exponents: *const u32,
    len: usize,
    n: usize,
    pass: *mut bool,
) -> StmodStatus {
    if h_exponents.is_null() || pass.is_null() {
        return fail(StmodStatus::NullPointer, "null argument");
    }
    let exps = std::slice::from_raw_parts(h_exponents, len).to_vec();
    guard(|| match stmod::cli::canon_seq_check(p, &exps, n, false) {
        Ok((report, cap)) => {
            *pass = report.pass() && cap;
            StmodStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}

/// Dimension of both sides of the identification `Ω^{-2n}(k) ≅ N(P_*, n)`
/// over the rank-two elementary abelian group; fails with a math status if
/// no bijective hom is found.
///
/// # Safety
/// `dim_out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn stmod_rank2_iso_dim(p: u32, n: usize, dim_out: *mut usize) -> StmodStatus {
    if dim_out.is_null() {
        return fail(StmodStatus::NullPointer, "null argument");
    }
    guard(|| match stmod::canonical::rank2_omega_iso(p, n) {
        Ok(id) => {
            *dim_out = id.n_part.dim();
            StmodStatus::Ok
        }
        Err(e) => from_error(&e),
    })
}
