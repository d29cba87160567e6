//! Truncated power series over F_p in the Euler-class variable e, and the
//! Wu-class derivation of the mod-p vanishing criterion for kappa_i.
//!
//! The total Wu class of a complex line bundle is 1 + e^{p-1} for odd p and
//! 1 + e at p = 2; the complement bundle carries its inverse. The series is
//! indexed by powers of e uniformly, so p = 2 and odd p share one code path
//! and the criterion is always "coefficient of e^{i+1} is nonzero".

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// Dense truncated series over F_p: coefficients c_0..c_cap of e^0..e^cap,
/// all reduced mod p. Arithmetic never reads beyond the cap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpSeries {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpSeries {
    /// The zero series over F_p truncated at degree `cap`.
    pub fn zero(p: u64, cap: usize) -> FpSeries {
        assert!(is_prime(p), "{p} is not prime");
        FpSeries {
            p,
            coeffs: vec![0; cap + 1],
        }
    }

    pub fn one(p: u64, cap: usize) -> FpSeries {
        let mut s = FpSeries::zero(p, cap);
        s.coeffs[0] = 1;
        s
    }

    /// Builds from raw coefficients (c_0 first), reducing mod p.
    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> FpSeries {
        assert!(is_prime(p), "{p} is not prime");
        assert!(!coeffs.is_empty());
        FpSeries {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn cap(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of e^m; zero beyond the cap.
    pub fn coeff(&self, m: usize) -> u64 {
        self.coeffs.get(m).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn set_coeff(&mut self, m: usize, c: u64) {
        assert!(m <= self.cap(), "degree {m} beyond cap {}", self.cap());
        self.coeffs[m] = c % self.p;
    }
}

impl fmt::Display for FpSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (m, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            terms.push(match (m, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "e".to_string(),
                (1, c) => format!("{c}*e"),
                (m, 1) => format!("e^{m}"),
                (m, c) => format!("{c}*e^{m}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Truncated Cauchy product; both operands must share p and cap.
pub fn series_mul(a: &FpSeries, b: &FpSeries) -> Result<FpSeries> {
    if a.p != b.p || a.cap() != b.cap() {
        return Err(Error::SeriesMismatch {
            p_left: a.p,
            cap_left: a.cap(),
            p_right: b.p,
            cap_right: b.cap(),
        });
    }
    let mut out = FpSeries::zero(a.p, a.cap());
    for i in 0..=a.cap() {
        if a.coeffs[i] == 0 {
            continue;
        }
        for j in 0..=a.cap() - i {
            out.coeffs[i + j] = (out.coeffs[i + j] + a.coeffs[i] * b.coeffs[j]) % a.p;
        }
    }
    Ok(out)
}

/// Multiplicative inverse up to the cap; requires constant term 1.
pub fn series_inverse(a: &FpSeries) -> Result<FpSeries> {
    if a.coeffs[0] != 1 {
        return Err(Error::NonUnitSeries);
    }
    let p = a.p;
    let mut out = FpSeries::zero(p, a.cap());
    out.coeffs[0] = 1;
    for n in 1..=a.cap() {
        let mut acc = 0u64;
        for k in 1..=n {
            acc = (acc + a.coeffs[k] * out.coeffs[n - k]) % p;
        }
        out.coeffs[n] = (p - acc) % p;
    }
    Ok(out)
}

/// The inverse total Wu class of the tautological line bundle:
/// (1 + e^{p-1})^{-1}, truncated at `cap`. At p = 2 this is (1 + e)^{-1}
/// with e the Euler class itself, so degrees align with i + 1 uniformly.
pub fn wu_total_inverse(p: u64, cap: usize) -> FpSeries {
    assert!(cap >= 1);
    let mut total = FpSeries::one(p, cap);
    let step = (p - 1) as usize;
    if step <= cap {
        total.coeffs[step] = 1;
    }
    series_inverse(&total).expect("total Wu class has constant term 1")
}

/// Mod-p vanishing of kappa_i by the Wu-class route: true exactly when the
/// coefficient of e^{i+1} in the inverse total class is nonzero, i.e. when
/// e^{i+1} times the Thom class comes from the base.
pub fn wu_vanishing_criterion(p: u64, i: u64) -> bool {
    debug_assert!(i >= 1);
    let cap = (i + 1) as usize;
    wu_total_inverse(p, cap).coeff(cap) != 0
}
