//! C ABI over the `kronecker` crate.
//!
//! Every function returns a [`KcStatus`] and writes results through out
//! pointers. Triples are opaque handles created by [`kc_triple_new`] and
//! released with [`kc_triple_free`]. Rationals cross the boundary as
//! `i64` numerator/denominator pairs; a value that does not fit yields
//! `KC_STATUS_OVERFLOW`. Panics never unwind into C.

use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kronecker::bounds::bound_report;
use kronecker::covering::{certified_alpha, exact_alpha, AlphaInterval, CoveringInstance};
use kronecker::numbers::{canonicalize, kappa_from_alpha, lattice_params, CanonicalTriple, Rational, Triple};
use kronecker::oracle::{oracle_alpha, OracleConfig};
use kronecker::KroneckerError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    NonDistinct = 3,
    Rectangular = 4,
    BudgetExhausted = 5,
    Overflow = 6,
    Panic = 7,
}

/// Opaque canonical 3-element set.
pub struct KcTriple {
    ct: CanonicalTriple,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KcRational {
    pub num: i64,
    pub den: i64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KcInterval {
    pub lo: KcRational,
    pub hi: KcRational,
    pub has_exact: bool,
    pub exact: KcRational,
    pub lo_f64: f64,
    pub hi_f64: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KcBounds {
    pub trivial: KcRational,
    pub m: i64,
    pub r: i64,
    pub rectangular: bool,
    /// When false the three fields below are zero.
    pub has_closed_form: bool,
    pub lower: KcRational,
    pub e1: KcRational,
    pub upper: KcRational,
}

fn status_of(e: &KroneckerError) -> KcStatus {
    match e {
        KroneckerError::NonDistinct => KcStatus::NonDistinct,
        KroneckerError::RectangularUnsupported => KcStatus::Rectangular,
        KroneckerError::BudgetExhausted(_) => KcStatus::BudgetExhausted,
        _ => KcStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), KcStatus>) -> KcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => KcStatus::Panic,
    }
}

fn to_c(r: Rational) -> Result<KcRational, KcStatus> {
    let num = i64::try_from(r.numer()).map_err(|_| KcStatus::Overflow)?;
    let den = i64::try_from(r.denom()).map_err(|_| KcStatus::Overflow)?;
    Ok(KcRational { num, den })
}

fn interval_to_c(iv: &AlphaInterval) -> Result<KcInterval, KcStatus> {
    Ok(KcInterval {
        lo: to_c(iv.lo)?,
        hi: to_c(iv.hi)?,
        has_exact: iv.exact.is_some(),
        exact: iv.exact.map(to_c).transpose()?.unwrap_or_default(),
        lo_f64: iv.lo.to_f64(),
        hi_f64: iv.hi.to_f64(),
    })
}

unsafe fn handle<'a>(t: *const KcTriple) -> Result<&'a KcTriple, KcStatus> {
    t.as_ref().ok_or(KcStatus::NullPointer)
}

unsafe fn write<T>(out: *mut T, v: T) -> Result<(), KcStatus> {
    if out.is_null() {
        return Err(KcStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

/// Canonicalizes `{n1, n2, n3}` into a new handle.
///
/// # Safety
/// `out` must be valid for writing a pointer.
#[no_mangle]
pub unsafe extern "C" fn kc_triple_new(n1: i64, n2: i64, n3: i64, out: *mut *mut KcTriple) -> KcStatus {
    guard(|| {
        if out.is_null() {
            return Err(KcStatus::NullPointer);
        }
        let t = Triple::new(n1, n2, n3).map_err(|e| status_of(&e))?;
        let boxed = Box::new(KcTriple { ct: canonicalize(&t) });
        out.write(Box::into_raw(boxed));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `t` must come from [`kc_triple_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn kc_triple_free(t: *mut KcTriple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Writes the canonical `(n1, n2, n3)` to `out[0..3]` and the removed common
/// factor to `scale` (which may be null).
///
/// # Safety
/// `t` must be a live handle; `out` must be valid for three `i64` writes.
#[no_mangle]
pub unsafe extern "C" fn kc_triple_canonical(t: *const KcTriple, out: *mut i64, scale: *mut i64) -> KcStatus {
    guard(|| {
        let t = handle(t)?;
        if out.is_null() {
            return Err(KcStatus::NullPointer);
        }
        ptr::copy_nonoverlapping(t.ct.values().as_ptr(), out, 3);
        if !scale.is_null() {
            scale.write(t.ct.scale());
        }
        Ok(())
    })
}

/// Lattice parameters `m` and `r`.
///
/// # Safety
/// `t` must be a live handle; `m` and `r` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kc_triple_lattice(t: *const KcTriple, m: *mut i64, r: *mut i64) -> KcStatus {
    guard(|| {
        let t = handle(t)?;
        let lp = lattice_params(&t.ct).map_err(|e| status_of(&e))?;
        write(m, lp.m)?;
        write(r, lp.r)
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kc_triple_bounds(t: *const KcTriple, out: *mut KcBounds) -> KcStatus {
    guard(|| {
        let t = handle(t)?;
        let rep = bound_report(&t.ct);
        let lp = rep.lattice.ok_or(KcStatus::NonDistinct)?;
        let mut b = KcBounds { trivial: to_c(rep.trivial)?, m: lp.m, r: lp.r, rectangular: rep.rectangular, ..Default::default() };
        if let Some(t1) = rep.theorem1 {
            b.has_closed_form = true;
            b.lower = to_c(t1.lower)?;
            b.e1 = to_c(t1.e1)?;
            b.upper = to_c(t1.upper)?;
        }
        write(out, b)
    })
}

/// Certified enclosure of α with width at most `tol_num / tol_den`.
///
/// # Safety
/// `t` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kc_alpha_certified(
    t: *const KcTriple,
    tol_num: i64,
    tol_den: i64,
    out: *mut KcInterval,
) -> KcStatus {
    guard(|| {
        let t = handle(t)?;
        let tol = Rational::try_new(tol_num as i128, tol_den as i128).map_err(|_| KcStatus::InvalidInput)?;
        let inst = CoveringInstance::new(&t.ct).map_err(|e| status_of(&e))?;
        let iv = certified_alpha(&inst, tol).map_err(|e| status_of(&e))?;
        write(out, interval_to_c(&iv)?)
    })
}

/// Exact α.
///
/// # Safety
/// `t` must be a live handle; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kc_alpha_exact(t: *const KcTriple, out: *mut KcRational) -> KcStatus {
    guard(|| {
        let t = handle(t)?;
        let inst = CoveringInstance::new(&t.ct).map_err(|e| status_of(&e))?;
        let v = exact_alpha(&inst).map_err(|e| status_of(&e))?;
        write(out, to_c(v)?)
    })
}

/// Brute-force enclosure for a 2- or 3-element set at default grids.
/// Accepts sets with repeated absolute values such as `{-1, 1, 2}`.
///
/// # Safety
/// `set` must point to `len` readable `i64`s; `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kc_oracle_alpha(set: *const i64, len: usize, out: *mut KcInterval) -> KcStatus {
    guard(|| {
        if set.is_null() {
            return Err(KcStatus::NullPointer);
        }
        let s = std::slice::from_raw_parts(set, len);
        let iv = oracle_alpha(s, &OracleConfig::default()).map_err(|e| status_of(&e))?;
        write(out, interval_to_c(&iv)?)
    })
}

/// κ = 2 sin(π α) for α in [0, 1/2].
///
/// # Safety
/// `out` must be valid for writing.
#[no_mangle]
pub unsafe extern "C" fn kc_kappa_from_alpha(alpha: f64, out: *mut f64) -> KcStatus {
    guard(|| {
        let k = kappa_from_alpha(alpha).map_err(|e| status_of(&e))?;
        write(out, k)
    })
}

/// Static, NUL-terminated description of a status code.
#[no_mangle]
pub extern "C" fn kc_status_message(status: KcStatus) -> *const c_char {
    let s: &'static CStr = match status {
        KcStatus::Ok => c"ok",
        KcStatus::NullPointer => c"null pointer argument",
        KcStatus::InvalidInput => c"invalid input",
        KcStatus::NonDistinct => c"absolute values are not distinct",
        KcStatus::Rectangular => c"rectangular lattice has no closed-form bounds",
        KcStatus::BudgetExhausted => c"solver budget exhausted",
        KcStatus::Overflow => c"value does not fit in 64-bit integers",
        KcStatus::Panic => c"internal error",
    };
    s.as_ptr()
}
