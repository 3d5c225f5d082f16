//! C interface to the `fourier-jacobi` library.
//!
//! Every function returns an [`FjtStatus`]; results are written through out
//! pointers only on success. Parameters and coefficient sequences live behind
//! opaque handles that the caller releases with the matching `*_free`
//! function. After a failure, [`fjt_last_error_message`] describes it; the
//! message is thread-local and valid until the next call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use fourier_jacobi::kernels::{
    forward_kernel, inverse_kernel, normalization, phi_kernel, PhiKernelRequest,
};
use fourier_jacobi::quad::QuadratureSpec;
use fourier_jacobi::specfun::JacobiParams;
use fourier_jacobi::transforms::{
    invert_coefficients, reconstruct, synthesize, synthesized_function, CoefficientSequence,
};
use fourier_jacobi::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FjtStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Regime = 3,
    DecayCondition = 4,
    Lipschitz = 5,
    Config = 6,
    NonConvergence = 7,
    Evaluation = 8,
    Divergence = 9,
    AccelerationFailure = 10,
    Overflow = 11,
    Panic = 12,
}

impl From<&Error> for FjtStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Domain { .. } => FjtStatus::Domain,
            Error::Regime { .. } => FjtStatus::Regime,
            Error::DecayCondition { .. } => FjtStatus::DecayCondition,
            Error::Lipschitz { .. } => FjtStatus::Lipschitz,
            Error::Config(_) => FjtStatus::Config,
            Error::NonConvergence { .. } => FjtStatus::NonConvergence,
            Error::Evaluation { .. } => FjtStatus::Evaluation,
            Error::Divergence { .. } => FjtStatus::Divergence,
            Error::AccelerationFailure { .. } => FjtStatus::AccelerationFailure,
            Error::Overflow { .. } => FjtStatus::Overflow,
        }
    }
}

/// Opaque parameter pair (a, c).
pub struct FjtParams(JacobiParams);

/// Opaque real coefficient sequence a_1..a_N bound to a parameter pair.
pub struct FjtSequence(CoefficientSequence);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard<F>(f: F) -> FjtStatus
where
    F: FnOnce() -> Result<(), Failure>,
{
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error(String::new());
            FjtStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_last_error(format!("null pointer passed as {what}"));
            FjtStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_last_error(e.to_string());
            FjtStatus::from(&e)
        }
        Err(_) => {
            set_last_error("internal panic".into());
            FjtStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn spec(rel_tol: f64, abs_tol: f64) -> Result<QuadratureSpec, Failure> {
    let s = QuadratureSpec::default()
        .with_rel_tol(rel_tol)
        .with_abs_tol(abs_tol);
    s.validate()?;
    Ok(s)
}

/// The last error message of this thread, or an empty string. Never null.
#[no_mangle]
pub extern "C" fn fjt_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fjt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Creates a parameter handle; fails with `Regime` unless a, c > 0.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_params_new(a: f64, c: f64, out: *mut *mut FjtParams) -> FjtStatus {
    guard(|| {
        let p = JacobiParams::new(a, c)?;
        write(out, Box::into_raw(Box::new(FjtParams(p))), "out")
    })
}

/// Releases a parameter handle. Null is ignored.
///
/// # Safety
/// `params` must be null or a handle from [`fjt_params_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fjt_params_free(params: *mut FjtParams) {
    if !params.is_null() {
        drop(Box::from_raw(params));
    }
}

/// F_n(x) for x >= 0.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_forward_kernel(
    params: *const FjtParams,
    n: u32,
    x: f64,
    out: *mut f64,
) -> FjtStatus {
    guard(|| {
        let p = deref(params, "params")?;
        write(out, forward_kernel(&p.0, n, x)?, "out")
    })
}

/// The inverse kernel G(x, u).
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_inverse_kernel(
    params: *const FjtParams,
    x: f64,
    u: f64,
    out: *mut f64,
) -> FjtStatus {
    guard(|| {
        let p = deref(params, "params")?;
        write(out, inverse_kernel(&p.0, x, u)?, "out")
    })
}

/// Phi_n(x) computed to the given tolerances.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_phi_kernel(
    params: *const FjtParams,
    n: u32,
    x: f64,
    rel_tol: f64,
    abs_tol: f64,
    out: *mut f64,
) -> FjtStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let v = phi_kernel(&PhiKernelRequest::new(p.0, n, x, spec(rel_tol, abs_tol)?))?;
        write(out, v, "out")
    })
}

/// The inversion, reconstruction and closed-form prefactors for index n.
///
/// # Safety
/// `params` must be a live handle; the three out pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fjt_normalization(
    params: *const FjtParams,
    n: u32,
    inversion: *mut f64,
    reconstruction: *mut f64,
    closed_form: *mut f64,
) -> FjtStatus {
    guard(|| {
        let p = deref(params, "params")?;
        if inversion.is_null() || reconstruction.is_null() || closed_form.is_null() {
            return Err(Failure::Null("out"));
        }
        let k = normalization(&p.0, n)?;
        write(inversion, k.theorem1_prefactor, "inversion")?;
        write(reconstruction, k.theorem2_prefactor, "reconstruction")?;
        write(closed_form, k.closed_coeff_prefactor, "closed_form")
    })
}

/// Copies `len` coefficients into a new sequence handle.
///
/// # Safety
/// `params` must be a live handle, `values` must point to `len` doubles, and
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_sequence_new(
    params: *const FjtParams,
    values: *const f64,
    len: usize,
    delta: f64,
    out: *mut *mut FjtSequence,
) -> FjtStatus {
    guard(|| {
        let p = deref(params, "params")?;
        if values.is_null() && len > 0 {
            return Err(Failure::Null("values"));
        }
        let v = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(values, len).to_vec()
        };
        let s = CoefficientSequence::new(v, p.0, delta)?;
        write(out, Box::into_raw(Box::new(FjtSequence(s))), "out")
    })
}

/// The built-in sequence a_n = e^(-2n) |Gamma(a + in/2)|^2, n = 1..len.
///
/// # Safety
/// `params` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_sequence_default(
    params: *const FjtParams,
    len: usize,
    out: *mut *mut FjtSequence,
) -> FjtStatus {
    guard(|| {
        let p = deref(params, "params")?;
        let s = CoefficientSequence::exponential_default(p.0, len)?;
        write(out, Box::into_raw(Box::new(FjtSequence(s))), "out")
    })
}

/// Number of coefficients in a sequence; 0 for null.
///
/// # Safety
/// `seq` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn fjt_sequence_len(seq: *const FjtSequence) -> usize {
    seq.as_ref().map_or(0, |s| s.0.len())
}

/// Copies up to `capacity` coefficients into `values`.
///
/// # Safety
/// `seq` must be a live handle and `values` must point to `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn fjt_sequence_values(
    seq: *const FjtSequence,
    values: *mut f64,
    capacity: usize,
) -> FjtStatus {
    guard(|| {
        let s = deref(seq, "seq")?;
        if values.is_null() && capacity > 0 {
            return Err(Failure::Null("values"));
        }
        let n = capacity.min(s.0.len());
        if n > 0 {
            ptr::copy_nonoverlapping(s.0.values().as_ptr(), values, n);
        }
        Ok(())
    })
}

/// Releases a sequence handle. Null is ignored.
///
/// # Safety
/// `seq` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn fjt_sequence_free(seq: *mut FjtSequence) {
    if !seq.is_null() {
        drop(Box::from_raw(seq));
    }
}

/// Sum_n a_n F_n(x) for x > 0, with a bound on the truncated tail
/// (infinite when unavailable). `tail_bound` may be null.
///
/// # Safety
/// `seq` must be a live handle and `value` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_synthesize(
    seq: *const FjtSequence,
    x: f64,
    value: *mut f64,
    tail_bound: *mut f64,
) -> FjtStatus {
    guard(|| {
        let s = deref(seq, "seq")?;
        if value.is_null() {
            return Err(Failure::Null("value"));
        }
        let r = synthesize(&s.0, x)?;
        write(value, r.value, "value")?;
        if !tail_bound.is_null() {
            tail_bound.write(r.tail_bound);
        }
        Ok(())
    })
}

/// Recovers a_n from the function synthesized by `seq`.
///
/// # Safety
/// `seq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_invert_synthesized(
    seq: *const FjtSequence,
    n: u32,
    rel_tol: f64,
    abs_tol: f64,
    out: *mut f64,
) -> FjtStatus {
    guard(|| {
        let s = deref(seq, "seq")?;
        let f = synthesized_function(&s.0);
        let v = invert_coefficients(&f, &s.0.params(), n, &spec(rel_tol, abs_tol)?)?;
        write(out, v, "out")
    })
}

/// Reconstructs f(x) from the first `terms` coefficients.
///
/// # Safety
/// `seq` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn fjt_reconstruct(
    seq: *const FjtSequence,
    x: f64,
    terms: usize,
    rel_tol: f64,
    abs_tol: f64,
    out: *mut f64,
) -> FjtStatus {
    guard(|| {
        let s = deref(seq, "seq")?;
        let r = reconstruct(&s.0, &s.0.params(), x, terms, &spec(rel_tol, abs_tol)?)?;
        write(out, r.value, "out")
    })
}
