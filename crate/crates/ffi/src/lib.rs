//! C ABI over the kappa library: opaque handles, status codes, and strings
//! the caller frees through [`kappa_string_free`].
//!
//! Every entry point that writes through an out-pointer is `unsafe`; the
//! caller guarantees the pointer is valid for writes. The generated header
//! lives at `include/kappa.h` (regenerated by the build script when cbindgen
//! is available).

use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use kappa_core::bernoulli::{bernoulli_std, den_b_over_2i};
use kappa_core::divisor::{
    adams_valuation_direct, akita_vanishes, resolve, DivisorReport, ValuationLemmaQuery,
};
use kappa_core::dl::bss_report;
use kappa_core::numtheory::{is_prime, Valuation};
use kappa_core::wu::wu_vanishing_criterion;

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KappaStatus {
    Ok = 0,
    /// An argument violated a documented precondition.
    InvalidArgument = 1,
    /// The requested valuation is infinite (the valuated quantity is zero).
    InfiniteValuation = 2,
    NullPointer = 3,
    /// An internal consistency check failed; this is a library bug.
    InternalError = 4,
}

/// # Safety
/// `dst`, when non-null, must be valid for a single pointer write.
unsafe fn out_string(dst: *mut *mut c_char, value: String) -> KappaStatus {
    if dst.is_null() {
        return KappaStatus::NullPointer;
    }
    match CString::new(value) {
        Ok(s) => {
            *dst = s.into_raw();
            KappaStatus::Ok
        }
        Err(_) => KappaStatus::InternalError,
    }
}

fn guarded<F: FnOnce() -> KappaStatus + UnwindSafe>(f: F) -> KappaStatus {
    catch_unwind(f).unwrap_or(KappaStatus::InternalError)
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn kappa_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Frees a string allocated by this library. NULL is a no-op.
///
/// # Safety
/// `s` must have been returned by a `kappa_*` function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn kappa_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the decimal value of the divisor D_i. i >= 1.
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_value(i: u64, out: *mut *mut c_char) -> KappaStatus {
    if i == 0 {
        return KappaStatus::InvalidArgument;
    }
    guarded(|| unsafe { out_string(out, resolve(i).d_value().to_string()) })
}

/// Writes the full divisor report as a JSON object. i >= 1.
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_report_json(i: u64, out: *mut *mut c_char) -> KappaStatus {
    if i == 0 {
        return KappaStatus::InvalidArgument;
    }
    guarded(|| unsafe { out_string(out, resolve(i).to_json_string()) })
}

/// Opaque divisor report handle.
pub struct KappaDivisorReport(DivisorReport);

/// Builds a divisor report for index i >= 1; free with
/// [`kappa_divisor_report_free`].
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_report_new(
    i: u64,
    out: *mut *mut KappaDivisorReport,
) -> KappaStatus {
    if out.is_null() {
        return KappaStatus::NullPointer;
    }
    if i == 0 {
        return KappaStatus::InvalidArgument;
    }
    guarded(|| {
        let handle = Box::new(KappaDivisorReport(resolve(i)));
        unsafe { *out = Box::into_raw(handle) };
        KappaStatus::Ok
    })
}

/// # Safety
/// `report` must come from [`kappa_divisor_report_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_report_free(report: *mut KappaDivisorReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// The index the report was built for; 0 on NULL input.
///
/// # Safety
/// `report` must be a live handle from [`kappa_divisor_report_new`] or NULL.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_report_index(report: *const KappaDivisorReport) -> u64 {
    report.as_ref().map_or(0, |r| r.0.index)
}

/// Writes the decimal lower bound of the report.
///
/// # Safety
/// `report` must be a live handle or NULL; `out` must be valid for a single
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_report_lower(
    report: *const KappaDivisorReport,
    out: *mut *mut c_char,
) -> KappaStatus {
    match report.as_ref() {
        None => KappaStatus::NullPointer,
        Some(r) => out_string(out, r.0.lower.to_string()),
    }
}

/// Writes the decimal upper bound of the report.
///
/// # Safety
/// `report` must be a live handle or NULL; `out` must be valid for a single
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_divisor_report_upper(
    report: *const KappaDivisorReport,
    out: *mut *mut c_char,
) -> KappaStatus {
    match report.as_ref() {
        None => KappaStatus::NullPointer,
        Some(r) => out_string(out, r.0.upper.to_string()),
    }
}

/// Writes the standard Bernoulli number B_n as "num/den" (lowest terms).
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_bernoulli_std(n: u32, out: *mut *mut c_char) -> KappaStatus {
    if n > 500 {
        return KappaStatus::InvalidArgument;
    }
    guarded(|| unsafe { out_string(out, bernoulli_std(n as usize).to_string()) })
}

/// Writes den(B_i/2i) in decimal. 1 <= i <= 250.
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_den_b_over_2i(i: u64, out: *mut *mut c_char) -> KappaStatus {
    if i == 0 || i > 250 {
        return KappaStatus::InvalidArgument;
    }
    guarded(|| unsafe { out_string(out, den_b_over_2i(i).to_string()) })
}

/// Whether kappa_i vanishes in mod-p cohomology. p must be prime, i >= 1.
///
/// # Safety
/// `out` must be valid for a single bool write.
#[no_mangle]
pub unsafe extern "C" fn kappa_akita_vanishes(p: u64, i: u64, out: *mut bool) -> KappaStatus {
    if out.is_null() {
        return KappaStatus::NullPointer;
    }
    if i == 0 || !is_prime_checked(p) {
        return KappaStatus::InvalidArgument;
    }
    *out = akita_vanishes(p, i);
    KappaStatus::Ok
}

/// The same vanishing decided through the Wu-class series.
///
/// # Safety
/// `out` must be valid for a single bool write.
#[no_mangle]
pub unsafe extern "C" fn kappa_wu_vanishing(p: u64, i: u64, out: *mut bool) -> KappaStatus {
    if out.is_null() {
        return KappaStatus::NullPointer;
    }
    if i == 0 || !is_prime_checked(p) {
        return KappaStatus::InvalidArgument;
    }
    let computed = match catch_unwind(|| wu_vanishing_criterion(p, i)) {
        Ok(v) => v,
        Err(_) => return KappaStatus::InternalError,
    };
    *out = computed;
    KappaStatus::Ok
}

/// nu_p(1 - (-k)^s) computed exactly. Returns `InfiniteValuation` for the
/// degenerate zero (k = 1, s even).
///
/// # Safety
/// `out` must be valid for a single i64 write.
#[no_mangle]
pub unsafe extern "C" fn kappa_adams_valuation_direct(
    p: u64,
    k: u64,
    s: u64,
    out: *mut i64,
) -> KappaStatus {
    if out.is_null() {
        return KappaStatus::NullPointer;
    }
    if s == 0 || !is_prime_checked(p) {
        return KappaStatus::InvalidArgument;
    }
    match adams_valuation_direct(ValuationLemmaQuery::new(p, k, s)) {
        Ok(Valuation::Finite(v)) => {
            *out = v;
            KappaStatus::Ok
        }
        Ok(Valuation::Infinite) => KappaStatus::InfiniteValuation,
        Err(_) => KappaStatus::InvalidArgument,
    }
}

/// Writes the spectral-sequence report as JSON. 5 <= cap <= 8.
///
/// # Safety
/// `out` must be valid for a single pointer write.
#[no_mangle]
pub unsafe extern "C" fn kappa_bss_report_json(cap: u32, out: *mut *mut c_char) -> KappaStatus {
    if !(5..=8).contains(&cap) {
        return KappaStatus::InvalidArgument;
    }
    guarded(|| match bss_report(cap) {
        Ok(report) => unsafe { out_string(out, report.to_json_string()) },
        Err(_) => KappaStatus::InvalidArgument,
    })
}

fn is_prime_checked(p: u64) -> bool {
    // Keep FFI callers inside the deterministic primality range.
    p < 1_000_000_000_000 && catch_unwind(|| is_prime(p)).unwrap_or(false)
}
