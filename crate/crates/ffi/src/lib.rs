//! C interface to `torsieve`.
//!
//! Every fallible call returns a [`TsStatus`]; results go through out
//! pointers. Objects are opaque handles released with their `_free`
//! function, strings returned by the library are released with
//! [`ts_string_free`]. After a non-`OK` status the message is available from
//! [`ts_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use torsieve::decomp::{self, Analysis, FieldContext};
use torsieve::residues::QuadraticField;
use torsieve::weil::{self, IntPolynomial};
use torsieve::{bounds, gl_orders, residues, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Precondition = 3,
    Range = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Result of the decomposition sieve.
pub struct TsAnalysis {
    inner: Analysis,
}

/// Monic integer polynomial.
pub struct TsPolynomial {
    inner: IntPolynomial,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::Domain(_) => TsStatus::Domain,
        Error::Precondition(_) => TsStatus::Precondition,
        Error::Range(_) => TsStatus::Range,
    }
}

fn guard<F: FnOnce() -> Result<(), TsStatus>>(f: F) -> TsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".to_string());
            TsStatus::Panic
        }
    }
}

fn check<T>(r: torsieve::Result<T>) -> Result<T, TsStatus> {
    r.map_err(|e| {
        let s = status_of(&e);
        set_error(e.to_string());
        s
    })
}

fn null() -> TsStatus {
    set_error("null pointer argument".to_string());
    TsStatus::NullPointer
}

fn range(msg: &str) -> TsStatus {
    set_error(msg.to_string());
    TsStatus::Range
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Writes `v` through `out`, failing on null.
///
/// # Safety
/// `out` must be null or valid for a write of `T`.
unsafe fn put<T>(out: *mut T, v: T) -> Result<(), TsStatus> {
    if out.is_null() {
        return Err(null());
    }
    out.write(v);
    Ok(())
}

/// Message for the last failed call on this thread, or null. Owned by the
/// library; valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn ts_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn ts_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ts_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// `M'(n)` as an integer. Fails with `RANGE` when it does not fit in 64 bits.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_mprime(n: u64, out: *mut u64) -> TsStatus {
    guard(|| {
        let m = check(gl_orders::m_prime(n))?;
        let v = m.value.to_u64().ok_or_else(|| range("M'(n) exceeds 64 bits"))?;
        put(out, v)
    })
}

/// `M'(n)` rendered as `"48 = 2^4 · 3"`; free with [`ts_string_free`].
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_mprime_string(n: u64, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let m = check(gl_orders::m_prime(n))?;
        put(out, into_c_string(m.to_string()))
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_lambert_w_m1(x: f64, out: *mut f64) -> TsStatus {
    guard(|| put(out, check(bounds::lambert_w_m1(x))?))
}

/// Largest root of `x^(1/n) = log(c x)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_x0(c: f64, n: f64, out: *mut f64) -> TsStatus {
    guard(|| put(out, check(bounds::x0(c, n))?))
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_a2_threshold(g: u64, q0: u64, e_lambda: u64, out: *mut u64) -> TsStatus {
    guard(|| {
        let t = check(bounds::a2_threshold(g, q0, e_lambda))?;
        put(out, t.to_u64().ok_or_else(|| range("threshold exceeds 64 bits"))?)
    })
}

/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_smallest_prime_residue(m: u64, ell: u64, out: *mut u64) -> TsStatus {
    guard(|| put(out, check(torsieve::arith::smallest_prime_mth_residue(m, ell))?))
}

/// Kronecker symbol `(a/n)`; total, never fails.
#[no_mangle]
pub extern "C" fn ts_kronecker(a: i64, n: u64) -> i32 {
    residues::kronecker(a, n)
}

/// Whether `ell` lies in `N'(K)` for `K` of discriminant `disc`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_nprime_member(ell: u64, disc: i64, out: *mut bool) -> TsStatus {
    guard(|| {
        let k = check(QuadraticField::new(disc))?;
        put(out, check(residues::nprime_member(ell, &k))?)
    })
}

/// Runs the sieve. `n_k = 0` selects the rational base.
///
/// # Safety
/// `out` must be valid for writes; the handle is released with
/// [`ts_analysis_free`].
#[no_mangle]
pub unsafe extern "C" fn ts_analysis_new(
    g: u64,
    n_k: u64,
    semistable: bool,
    out: *mut *mut TsAnalysis,
) -> TsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        let ctx = if n_k == 0 { FieldContext::rational() } else { check(FieldContext::general(n_k))? };
        let inner = check(decomp::analyze(g, &ctx.with_semistable(semistable)))?;
        put(out, Box::into_raw(Box::new(TsAnalysis { inner })))
    })
}

/// # Safety
/// `a` must be null or a live handle from [`ts_analysis_new`].
#[no_mangle]
pub unsafe extern "C" fn ts_analysis_free(a: *mut TsAnalysis) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of surviving `(profile, m_Q)` pairs; 0 for a null handle.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_analysis_survivor_count(a: *const TsAnalysis) -> usize {
    a.as_ref().map_or(0, |a| a.inner.survivors.len())
}

/// Number of profiles that reached the `m_Q` stage.
///
/// # Safety
/// `a` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_analysis_exception_count(a: *const TsAnalysis) -> usize {
    a.as_ref().map_or(0, |a| a.inner.exceptions.len())
}

/// Fields of survivor `index`. The congruence is `ell ≡ residue (mod modulus)`.
///
/// # Safety
/// `a` must be a live handle; each out pointer must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_analysis_survivor(
    a: *const TsAnalysis,
    index: usize,
    e: *mut u64,
    m_q: *mut u64,
    modulus: *mut u64,
    residue: *mut u64,
) -> TsStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(null)?;
        let s = a.inner.survivors.get(index).ok_or_else(|| range("survivor index out of range"))?;
        let r = *s.constraint.residues().first().ok_or_else(|| range("empty congruence"))?;
        put(e, s.e)?;
        put(m_q, s.m_q)?;
        put(modulus, s.constraint.modulus())?;
        put(residue, r)
    })
}

/// Plain-text report; free with [`ts_string_free`].
///
/// # Safety
/// `a` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_analysis_render(a: *const TsAnalysis, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let a = a.as_ref().ok_or_else(null)?;
        put(out, into_c_string(a.inner.render_text()))
    })
}

/// Builds a polynomial from `len` coefficients, highest degree first; the
/// leading one must be 1.
///
/// # Safety
/// `coeffs` must point to `len` readable values; `out` must be valid for
/// writes.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_new(coeffs: *const i64, len: usize, out: *mut *mut TsPolynomial) -> TsStatus {
    guard(|| {
        if coeffs.is_null() || out.is_null() {
            return Err(null());
        }
        let c = std::slice::from_raw_parts(coeffs, len);
        let inner = check(IntPolynomial::from_descending(c))?;
        put(out, Box::into_raw(Box::new(TsPolynomial { inner })))
    })
}

/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_free(p: *mut TsPolynomial) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_degree(p: *const TsPolynomial) -> usize {
    p.as_ref().map_or(0, |p| p.inner.degree())
}

/// Coefficient of `T^i`. Fails with `RANGE` if `i` exceeds the degree or the
/// value does not fit in 64 bits.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_coeff(p: *const TsPolynomial, i: usize, out: *mut i64) -> TsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        let c = p.inner.coeffs().get(i).ok_or_else(|| range("index above the degree"))?;
        put(out, c.to_i64().ok_or_else(|| range("coefficient exceeds 64 bits"))?)
    })
}

/// Characteristic polynomial of the `e`-th power of a root.
///
/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_power_charpoly(
    p: *const TsPolynomial,
    e: u64,
    out: *mut *mut TsPolynomial,
) -> TsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        if out.is_null() {
            return Err(null());
        }
        let inner = check(weil::power_charpoly(&p.inner, e))?;
        put(out, Box::into_raw(Box::new(TsPolynomial { inner })))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_is_weil(p: *const TsPolynomial, q: u64, out: *mut bool) -> TsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        put(out, p.inner.is_weil(q))
    })
}

/// # Safety
/// `p` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_poly_to_string(p: *const TsPolynomial, out: *mut *mut c_char) -> TsStatus {
    guard(|| {
        let p = p.as_ref().ok_or_else(null)?;
        put(out, into_c_string(p.inner.to_string()))
    })
}

/// Runs the command line with `argc` arguments (the program name first) and
/// returns its standard output; the exit code goes to `code`.
///
/// # Safety
/// `argv` must hold `argc` valid NUL-terminated strings; `code` and `out`
/// must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ts_run(
    argc: usize,
    argv: *const *const c_char,
    code: *mut i32,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        if argv.is_null() || code.is_null() || out.is_null() {
            return Err(null());
        }
        let mut args = Vec::with_capacity(argc);
        for &a in std::slice::from_raw_parts(argv, argc) {
            if a.is_null() {
                return Err(null());
            }
            let s = CStr::from_ptr(a).to_str().map_err(|_| {
                set_error("argument is not UTF-8".to_string());
                TsStatus::InvalidUtf8
            })?;
            args.push(s.to_string());
        }
        let o = torsieve::cli::run(args);
        if o.code != 0 {
            set_error(o.stderr.trim_end().to_string());
        }
        put(code, o.code)?;
        put(out, into_c_string(o.stdout))
    })
}
