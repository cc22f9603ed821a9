//! C ABI for the nlcs library.
//!
//! Conventions: families and states are opaque heap handles created and
//! released through this API; every fallible call returns an [`NlcsStatus`]
//! and writes results through out-pointers; the most recent error message
//! is kept per thread and read back with `nlcs_last_error_message`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use num_complex::Complex64;

use nlcs::families::{Dimension, FamilySpec};
use nlcs::fock::{build_state, overlap, photon_statistics, FockExpansion, TruncationPolicy};
use nlcs::Error;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NlcsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DomainError = 4,
    Divergence = 5,
    Truncation = 6,
    Singularity = 7,
    Degenerate = 8,
    DimensionMismatch = 9,
}

/// Opaque family handle.
pub struct NlcsFamily {
    inner: FamilySpec,
}

/// Opaque state handle.
pub struct NlcsState {
    inner: FockExpansion,
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

fn status_of(err: &Error) -> NlcsStatus {
    match err {
        Error::Parse(_) => NlcsStatus::ParseError,
        Error::Domain(_) => NlcsStatus::DomainError,
        Error::Divergence(_) => NlcsStatus::Divergence,
        Error::Truncation { .. } => NlcsStatus::Truncation,
        Error::Singularity { .. } => NlcsStatus::Singularity,
        Error::Degenerate(_) => NlcsStatus::Degenerate,
        Error::DimensionMismatch(_) => NlcsStatus::DimensionMismatch,
    }
}

fn fail(err: Error) -> NlcsStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

/// Message of the most recent error on this thread. The pointer stays valid
/// until the next failing call on the same thread; never free it.
#[no_mangle]
pub extern "C" fn nlcs_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Parse a family from its text form, e.g. "poschl_teller(nu=3)" or
/// "dual(bg(kappa=1.5))". On success writes a heap handle to `out`;
/// release it with `nlcs_family_free`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_parse(spec: *const c_char, out: *mut *mut NlcsFamily) -> NlcsStatus {
    if spec.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    let text = match CStr::from_ptr(spec).to_str() {
        Ok(t) => t,
        Err(_) => {
            set_error("family spec is not valid UTF-8");
            return NlcsStatus::InvalidUtf8;
        }
    };
    match FamilySpec::parse(text) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(NlcsFamily { inner }));
            NlcsStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            fail(e)
        }
    }
}

/// Release a family handle. NULL is ignored.
///
/// # Safety
/// `family` must come from this API and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_free(family: *mut NlcsFamily) {
    if !family.is_null() {
        drop(Box::from_raw(family));
    }
}

/// Dual family with weights μ(n) = (n!)²/ρ(n); duality is an involution.
///
/// # Safety
/// `family` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_dual(family: *const NlcsFamily, out: *mut *mut NlcsFamily) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    let dual = (*family).inner.dual();
    *out = Box::into_raw(Box::new(NlcsFamily { inner: dual }));
    NlcsStatus::Ok
}

/// Canonical text form of the family; free with `nlcs_string_free`.
///
/// # Safety
/// `family` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_text(family: *const NlcsFamily, out: *mut *mut c_char) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    let text = (*family).inner.to_string();
    match CString::new(text) {
        Ok(s) => {
            *out = s.into_raw();
            NlcsStatus::Ok
        }
        Err(_) => {
            set_error("family text contains NUL");
            NlcsStatus::ParseError
        }
    }
}

/// ρ(n), normalized so that ρ(0) = 1.
///
/// # Safety
/// `family` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_weight(family: *const NlcsFamily, n: u32, out: *mut f64) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    match (*family).inner.weight(n as usize) {
        Ok(v) => {
            *out = v;
            NlcsStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// e_n = ρ(n)/ρ(n−1), with e_0 = 0.
///
/// # Safety
/// `family` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_spectrum(family: *const NlcsFamily, n: u32, out: *mut f64) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    match (*family).inner.spectrum_value(n as usize) {
        Ok(v) => {
            *out = v;
            NlcsStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Nonlinearity f(n) = √(e_n/n) for n ≥ 1.
///
/// # Safety
/// `family` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_nonlinearity(family: *const NlcsFamily, n: u32, out: *mut f64) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    match (*family).inner.nonlinearity_value(n as usize) {
        Ok(v) => {
            *out = v;
            NlcsStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Convergence radius of the state label (lim e_n); +inf for whole-plane
/// families.
///
/// # Safety
/// `family` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_radius(family: *const NlcsFamily, out: *mut f64) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    *out = (*family).inner.convergence_radius().value;
    NlcsStatus::Ok
}

/// Hilbert-space dimension, or -1 when infinite.
///
/// # Safety
/// `family` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn nlcs_family_dimension(family: *const NlcsFamily) -> i64 {
    if family.is_null() {
        return 0;
    }
    match (*family).inner.dimension() {
        Dimension::Finite(d) => d as i64,
        Dimension::Infinite => -1,
    }
}

/// Build the normalized state |z,α⟩. Pass `alpha` as NULL to omit the
/// stabilization phases. `trunc_tol` ≤ 0 selects the default 1e-12;
/// `max_n` = 0 selects the default cap 512.
///
/// # Safety
/// `family` must be a valid handle; `alpha` NULL or valid; `out` valid.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_build(
    family: *const NlcsFamily,
    z_re: f64,
    z_im: f64,
    alpha: *const f64,
    trunc_tol: f64,
    max_n: usize,
    out: *mut *mut NlcsState,
) -> NlcsStatus {
    if family.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    let defaults = TruncationPolicy::default();
    let trunc = TruncationPolicy {
        tolerance: if trunc_tol > 0.0 { trunc_tol } else { defaults.tolerance },
        max_n: if max_n > 0 { max_n } else { defaults.max_n },
    };
    let alpha = if alpha.is_null() { None } else { Some(*alpha) };
    match build_state(&(*family).inner, Complex64::new(z_re, z_im), alpha, &trunc) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(NlcsState { inner }));
            NlcsStatus::Ok
        }
        Err(e) => {
            *out = ptr::null_mut();
            fail(e)
        }
    }
}

/// Release a state handle. NULL is ignored.
///
/// # Safety
/// `state` must come from this API and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_free(state: *mut NlcsState) {
    if !state.is_null() {
        drop(Box::from_raw(state));
    }
}

/// Number of stored coefficients (truncation N + 1).
///
/// # Safety
/// `state` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_len(state: *const NlcsState) -> usize {
    if state.is_null() {
        return 0;
    }
    (*state).inner.coefficients().len()
}

/// Coefficient c_n of the expansion.
///
/// # Safety
/// `state` must be a valid handle; `re` and `im` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_coefficient(
    state: *const NlcsState,
    n: usize,
    re: *mut f64,
    im: *mut f64,
) -> NlcsStatus {
    if state.is_null() || re.is_null() || im.is_null() {
        return NlcsStatus::NullPointer;
    }
    match (*state).inner.coefficients().get(n) {
        Some(c) => {
            *re = c.re;
            *im = c.im;
            NlcsStatus::Ok
        }
        None => {
            set_error("coefficient index beyond the truncation");
            NlcsStatus::DomainError
        }
    }
}

/// Estimated probability mass beyond the truncation.
///
/// # Safety
/// `state` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_tail_mass(state: *const NlcsState) -> f64 {
    if state.is_null() {
        return f64::NAN;
    }
    (*state).inner.tail_mass()
}

/// Photon statistics: mean, variance and Mandel Q.
///
/// # Safety
/// `state` must be a valid handle; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_stats(
    state: *const NlcsState,
    mean: *mut f64,
    variance: *mut f64,
    mandel_q: *mut f64,
) -> NlcsStatus {
    if state.is_null() || mean.is_null() || variance.is_null() || mandel_q.is_null() {
        return NlcsStatus::NullPointer;
    }
    let stats = photon_statistics(&(*state).inner);
    *mean = stats.mean_n;
    *variance = stats.variance_n;
    *mandel_q = stats.mandel_q;
    NlcsStatus::Ok
}

/// ⟨s1|s2⟩ over the union truncation.
///
/// # Safety
/// Both handles must be valid; out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_overlap(
    s1: *const NlcsState,
    s2: *const NlcsState,
    re: *mut f64,
    im: *mut f64,
) -> NlcsStatus {
    if s1.is_null() || s2.is_null() || re.is_null() || im.is_null() {
        return NlcsStatus::NullPointer;
    }
    let v = overlap(&(*s1).inner, &(*s2).inner);
    *re = v.re;
    *im = v.im;
    NlcsStatus::Ok
}

/// Serialize the state to its documented JSON form; free the string with
/// `nlcs_string_free`.
///
/// # Safety
/// `state` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn nlcs_state_to_json(state: *const NlcsState, out: *mut *mut c_char) -> NlcsStatus {
    if state.is_null() || out.is_null() {
        return NlcsStatus::NullPointer;
    }
    match (*state).inner.to_json() {
        Ok(text) => match CString::new(text) {
            Ok(s) => {
                *out = s.into_raw();
                NlcsStatus::Ok
            }
            Err(_) => {
                set_error("JSON contains NUL");
                NlcsStatus::ParseError
            }
        },
        Err(e) => fail(e),
    }
}

/// Free a string returned by this API. NULL is ignored.
///
/// # Safety
/// `s` must come from this API and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn nlcs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
