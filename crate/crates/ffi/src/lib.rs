//! C ABI over `lowzero`.
//!
//! Every fallible function returns an `LzStatus`; results go through out
//! pointers. On failure `lz_last_error_message` describes the error for the
//! calling thread. Handles are opaque and must be released with the matching
//! `*_free` function.

use lowzero::bounds;
use lowzero::fields::{alpha, parse_field_spec, NumberField};
use lowzero::lfunctions::{HardyFunction, LFunction, LFunctionSpec};
use lowzero::primes::{self, MangoldtTable};
use lowzero::testfn;
use lowzero::zeros::{self, LowestZeroStatus};
use lowzero::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LzStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Domain = 3,
    NoConvergence = 4,
    Range = 5,
    Evaluation = 6,
    EvenOrderZero = 7,
    Mismatch = 8,
    NotApplicable = 9,
    Panic = 10,
}

/// A number field record.
pub struct LzField {
    inner: NumberField,
}

/// A von Mangoldt table up to some x_max.
pub struct LzMangoldtTable {
    inner: MangoldtTable,
}

/// ζ or L(s, χ_d) ready for evaluation on the critical line.
pub struct LzLFunction {
    inner: LFunction,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LzCompletedValue {
    pub t: f64,
    pub lambda_value: f64,
    pub err_estimate: f64,
    pub scale: f64,
    pub normalized: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LzTheorem2 {
    pub a: f64,
    pub b: f64,
    pub bound: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct LzLowestZero {
    /// 1 when a zero was found below the ceiling.
    pub found: i32,
    /// 1 when the function vanishes at the central point.
    pub central_zero: i32,
    pub tau: f64,
    pub bracket_width: f64,
    pub central_value: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> LzStatus {
    match e {
        Error::FieldSpec { .. } | Error::NotFundamental(_) | Error::DegenerateField(_) => LzStatus::InvalidArgument,
        Error::Domain(_) => LzStatus::Domain,
        Error::NoConvergence { .. } | Error::Quadrature { .. } => LzStatus::NoConvergence,
        Error::Range { .. } => LzStatus::Range,
        Error::Evaluation { .. } => LzStatus::Evaluation,
        Error::EvenOrderZero { .. } => LzStatus::EvenOrderZero,
        Error::Mismatch(_) => LzStatus::Mismatch,
    }
}

fn fail(e: Error) -> LzStatus {
    set_error(&e.to_string());
    status_of(&e)
}

fn guard<F: FnOnce() -> LzStatus>(f: F) -> LzStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            LzStatus::Panic
        }
    }
}

fn null() -> LzStatus {
    set_error("null pointer argument");
    LzStatus::NullPointer
}

macro_rules! write_out {
    ($out:expr, $val:expr) => {{
        if $out.is_null() {
            return null();
        }
        unsafe { *$out = $val };
        LzStatus::Ok
    }};
}

macro_rules! try_lz {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => return fail(err),
        }
    };
}

/// Message for the last failure on this thread; valid until the next call
/// that fails on the same thread.
#[no_mangle]
pub extern "C" fn lz_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version, static storage.
#[no_mangle]
pub extern "C" fn lz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

// fields

/// Parse an `x^k+c` spec.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_field_from_spec(spec: *const c_char, out: *mut *mut LzField) -> LzStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return null();
        }
        let Ok(s) = unsafe { CStr::from_ptr(spec) }.to_str() else {
            set_error("spec is not valid UTF-8");
            return LzStatus::InvalidArgument;
        };
        let f = try_lz!(parse_field_spec(s));
        write_out!(out, Box::into_raw(Box::new(LzField { inner: f })))
    })
}

/// Quadratic field of fundamental discriminant `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_field_quadratic(d: i64, out: *mut *mut LzField) -> LzStatus {
    guard(|| {
        let f = try_lz!(NumberField::quadratic(d));
        write_out!(out, Box::into_raw(Box::new(LzField { inner: f })))
    })
}

/// # Safety
/// `field` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn lz_field_free(field: *mut LzField) {
    if !field.is_null() {
        drop(unsafe { Box::from_raw(field) });
    }
}

/// α = ln|d| / n.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_field_alpha(field: *const LzField, out: *mut f64) -> LzStatus {
    guard(|| {
        let Some(f) = (unsafe { field.as_ref() }) else {
            return null();
        };
        let a = try_lz!(alpha(&f.inner));
        write_out!(out, a)
    })
}

/// ln|d|.
///
/// # Safety
/// `field` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_field_log_disc(field: *const LzField, out: *mut f64) -> LzStatus {
    guard(|| {
        let Some(f) = (unsafe { field.as_ref() }) else {
            return null();
        };
        write_out!(out, f.inner.log_disc())
    })
}

/// Degree and signature.
///
/// # Safety
/// `field` must be a live handle; the out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_field_signature(
    field: *const LzField,
    degree: *mut u32,
    r1: *mut u32,
    r2: *mut u32,
) -> LzStatus {
    guard(|| {
        let Some(f) = (unsafe { field.as_ref() }) else {
            return null();
        };
        if degree.is_null() || r1.is_null() || r2.is_null() {
            return null();
        }
        unsafe {
            *degree = f.inner.degree;
            *r1 = f.inner.r1;
            *r2 = f.inner.r2;
        }
        LzStatus::Ok
    })
}

// bounds

/// `LZ_STATUS_NOT_APPLICABLE` when α is at or below the threshold.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_theorem1_bound(alpha: f64, out: *mut f64) -> LzStatus {
    guard(|| match bounds::theorem1_bound(alpha) {
        Some(b) => write_out!(out, b),
        None => {
            set_error("alpha is at or below the threshold");
            LzStatus::NotApplicable
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_theorem2_bound(alpha: f64, log_disc: f64, out: *mut LzTheorem2) -> LzStatus {
    guard(|| match try_lz!(bounds::theorem2_bound(alpha, log_disc)) {
        Some(t) => write_out!(out, LzTheorem2 { a: t.a, b: t.b, bound: t.bound }),
        None => {
            set_error("alpha is at or below the threshold");
            LzStatus::NotApplicable
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_remark_variant_bound(alpha: f64, out: *mut f64) -> LzStatus {
    guard(|| match bounds::remark_variant_bound(alpha) {
        Some(b) => write_out!(out, b),
        None => {
            set_error("alpha is at or below the threshold");
            LzStatus::NotApplicable
        }
    })
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_neugebauer_bound(alpha: f64, out: *mut f64) -> LzStatus {
    guard(|| write_out!(out, try_lz!(bounds::neugebauer_bound(alpha))))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_lemma3_threshold(a: f64, b: f64, c: f64, out: *mut f64) -> LzStatus {
    guard(|| write_out!(out, try_lz!(bounds::lemma3_threshold(a, b, c))))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_central_order_bound(log_disc: f64, degree: u32, out: *mut f64) -> LzStatus {
    guard(|| write_out!(out, try_lz!(bounds::central_order_bound(log_disc, degree))))
}

// test function

#[no_mangle]
pub extern "C" fn lz_test_function(x: f64) -> f64 {
    testfn::f_eval(x)
}

#[no_mangle]
pub extern "C" fn lz_test_function_transform(u: f64) -> f64 {
    testfn::fhat_closed(u)
}

// primes

/// Sieve Λ(n) for n ≤ x_max.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_mangoldt_new(x_max: u64, out: *mut *mut LzMangoldtTable) -> LzStatus {
    guard(|| {
        let t = try_lz!(primes::mangoldt_sieve(x_max));
        write_out!(out, Box::into_raw(Box::new(LzMangoldtTable { inner: t })))
    })
}

/// # Safety
/// `table` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn lz_mangoldt_free(table: *mut LzMangoldtTable) {
    if !table.is_null() {
        drop(unsafe { Box::from_raw(table) });
    }
}

/// ψ(x).
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_chebyshev_psi(table: *const LzMangoldtTable, x: f64, out: *mut f64) -> LzStatus {
    guard(|| {
        let Some(t) = (unsafe { table.as_ref() }) else {
            return null();
        };
        write_out!(out, try_lz!(primes::chebyshev_psi(x, &t.inner)))
    })
}

/// Σ_{n ≤ e^T} Λ(n)/√n.
///
/// # Safety
/// `table` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_lambda_weighted_sum(table: *const LzMangoldtTable, t: f64, out: *mut f64) -> LzStatus {
    guard(|| {
        let Some(tb) = (unsafe { table.as_ref() }) else {
            return null();
        };
        write_out!(out, try_lz!(primes::lambda_weighted_sum(t, &tb.inner)))
    })
}

// L-functions

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_lfunction_zeta(out: *mut *mut LzLFunction) -> LzStatus {
    guard(|| {
        let l = try_lz!(LFunction::new(LFunctionSpec::riemann_zeta()));
        write_out!(out, Box::into_raw(Box::new(LzLFunction { inner: l })))
    })
}

/// L(s, χ_d) for a fundamental discriminant `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_lfunction_dirichlet(d: i64, out: *mut *mut LzLFunction) -> LzStatus {
    guard(|| {
        let spec = try_lz!(LFunctionSpec::from_discriminant(d));
        let l = try_lz!(LFunction::new(spec));
        write_out!(out, Box::into_raw(Box::new(LzLFunction { inner: l })))
    })
}

/// # Safety
/// `l` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn lz_lfunction_free(l: *mut LzLFunction) {
    if !l.is_null() {
        drop(unsafe { Box::from_raw(l) });
    }
}

/// Real completed value at 1/2 + it.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_lfunction_eval(l: *const LzLFunction, t: f64, out: *mut LzCompletedValue) -> LzStatus {
    guard(|| {
        let Some(l) = (unsafe { l.as_ref() }) else {
            return null();
        };
        let v = try_lz!(l.inner.eval(t));
        write_out!(
            out,
            LzCompletedValue {
                t: v.t,
                lambda_value: v.lambda_value,
                err_estimate: v.err_estimate,
                scale: v.scale,
                normalized: v.normalized,
            }
        )
    })
}

/// Lowest positive zero below `t_max`.
///
/// # Safety
/// `l` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_lfunction_lowest_zero(l: *const LzLFunction, t_max: f64, out: *mut LzLowestZero) -> LzStatus {
    guard(|| {
        let Some(l) = (unsafe { l.as_ref() }) else {
            return null();
        };
        let r = try_lz!(zeros::lowest_zero_of(&l.inner, t_max, zeros::DEFAULT_GRID_STEP));
        write_out!(
            out,
            LzLowestZero {
                found: i32::from(r.tau.is_some()),
                central_zero: i32::from(r.status == LowestZeroStatus::CentralZeroDetected),
                tau: r.tau.unwrap_or(f64::NAN),
                bracket_width: r.bracket_width.unwrap_or(f64::NAN),
                central_value: r.central_value,
            }
        )
    })
}

/// τ(K) for the quadratic field of discriminant `d`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lz_tau_quadratic(d: i64, t_max: f64, out: *mut LzLowestZero) -> LzStatus {
    guard(|| {
        let r = try_lz!(zeros::tau_quadratic(d, t_max));
        write_out!(
            out,
            LzLowestZero {
                found: i32::from(r.tau.is_some()),
                central_zero: i32::from(r.status == LowestZeroStatus::CentralZeroDetected),
                tau: r.tau.unwrap_or(f64::NAN),
                bracket_width: r.bracket_width.unwrap_or(f64::NAN),
                central_value: r.central_value,
            }
        )
    })
}
