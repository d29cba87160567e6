//! Exact integer/rational arithmetic, p-adic valuations, prime enumeration,
//! multiplicative orders, and the selection of the Adams parameter k(p).
//!
//! Everything here is a pure function on immutable values; the only shared
//! state is a read-only prime sieve initialized once on first use.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer; round-trips losslessly through its
/// decimal string form and never overflows.
pub type ExactInt = BigInt;

/// Arbitrary-precision rational, kept in lowest terms with a strictly
/// positive denominator at all times.
pub type ExactRat = BigRational;

/// A p-adic valuation: the exponent of p in a rational number, with a
/// distinguished marker for the zero input (and only for zero).
///
/// Valuations of nonzero rationals are signed; nonnegative contexts assert
/// integrality at the call site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Unwraps a finite valuation; panics on the zero marker.
    pub fn expect_finite(self) -> i64 {
        self.finite().expect("valuation of zero is infinite")
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// The parameter k = k(p) of the Adams self-map 1 + k psi^{-k}: a positive
/// integer such that -k reduces to a generator of the units of Z/p^2 when p
/// is odd, and k = 5 when p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KChoice {
    pub p: u64,
    pub k: u64,
}

impl KChoice {
    /// Validates the defining property before constructing.
    pub fn new(p: u64, k: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::BadKChoice {
                p,
                k,
                reason: "k must be positive".into(),
            });
        }
        if p == 2 {
            if k != 5 {
                return Err(Error::BadKChoice {
                    p,
                    k,
                    reason: "the convention fixes k = 5 at p = 2".into(),
                });
            }
            return Ok(KChoice { p, k });
        }
        let m = p * p;
        let target = p * (p - 1);
        let order = order_mod(-(k as i64), m).map_err(|_| Error::BadKChoice {
            p,
            k,
            reason: format!("-{k} is not a unit modulo {m}"),
        })?;
        if order != target {
            return Err(Error::BadKChoice {
                p,
                k,
                reason: format!("-{k} has order {order} modulo {m}, need {target}"),
            });
        }
        Ok(KChoice { p, k })
    }
}

impl fmt::Display for KChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k({}) = {}", self.p, self.k)
    }
}

/// Default sieve bound. Every index in scope keeps its prime factors far
/// below this.
pub const SIEVE_BOUND: u64 = 1_000_000;

struct Sieve {
    bound: u64,
    composite: Vec<bool>,
    primes: Vec<u64>,
}

impl Sieve {
    fn build(bound: u64) -> Sieve {
        let n = bound as usize;
        let mut composite = vec![false; n + 1];
        let mut primes = Vec::new();
        for q in 2..=n {
            if !composite[q] {
                primes.push(q as u64);
                let mut multiple = q * q;
                while multiple <= n {
                    composite[multiple] = true;
                    multiple += q;
                }
            }
        }
        Sieve {
            bound,
            composite,
            primes,
        }
    }
}

static SIEVE: OnceLock<Sieve> = OnceLock::new();

/// Overrides the sieve bound. Must run before anything touches the sieve;
/// returns false (and changes nothing) once the sieve exists. The bound
/// also fixes the deterministic primality range, bound^2.
pub fn init_sieve(bound: u64) -> bool {
    assert!(bound >= 100, "sieve bound too small to be useful");
    SIEVE.set(Sieve::build(bound)).is_ok()
}

fn sieve() -> &'static Sieve {
    SIEVE.get_or_init(|| {
        log::debug!("building prime sieve up to {SIEVE_BOUND}");
        Sieve::build(SIEVE_BOUND)
    })
}

/// The sieved primes in ascending order (everything below the sieve bound).
pub fn small_primes() -> &'static [u64] {
    &sieve().primes
}

/// Deterministic primality for the range this crate works in: sieve lookup
/// below the bound, trial division by sieved primes above it (complete for
/// n below SIEVE_BOUND^2).
pub fn is_prime(n: u64) -> bool {
    let s = sieve();
    if n < 2 {
        return false;
    }
    if n <= s.bound {
        return !s.composite[n as usize];
    }
    for &q in &s.primes {
        if q.saturating_mul(q) > n {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    // n >= SIEVE_BOUND^2: outside the deterministic range we promise.
    panic!("primality query {n} exceeds the supported range");
}

/// Exponent of the prime p in a nonzero machine integer.
pub fn vp_u64(p: u64, mut n: u64) -> u32 {
    debug_assert!(n > 0);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of an arbitrary-precision integer.
pub fn vp_int(p: u64, n: &ExactInt) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let big_p = ExactInt::from(p);
    let mut rem = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = rem.div_rem(&big_p);
        if !r.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        rem = q;
        v += 1;
    }
}

/// p-adic valuation of a rational: vp(num) - vp(den), signed; `Infinite`
/// exactly for x = 0.
pub fn vp(p: u64, x: &ExactRat) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if x.is_zero() {
        return Ok(Valuation::Infinite);
    }
    let num = vp_int(p, x.numer())?.expect_finite();
    let den = vp_int(p, x.denom())?.expect_finite();
    Ok(Valuation::Finite(num - den))
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Factorization of a machine integer, via the sieve plus odd trial
/// division past the bound (so cofactors with only large prime factors are
/// still split correctly). The bignum entry point is [`factorize`].
pub(crate) fn factorize_u64(mut n: u64) -> BTreeMap<u64, u32> {
    assert!(n > 0);
    let mut out = BTreeMap::new();
    for &q in small_primes() {
        if q.saturating_mul(q) > n {
            break;
        }
        while n.is_multiple_of(q) {
            n /= q;
            *out.entry(q).or_insert(0) += 1;
        }
    }
    let mut candidate = sieve().bound | 1;
    while candidate.saturating_mul(candidate) <= n {
        while n.is_multiple_of(candidate) {
            n /= candidate;
            *out.entry(candidate).or_insert(0) += 1;
        }
        candidate += 2;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Euler's totient of a machine integer.
pub fn euler_phi(m: u64) -> u64 {
    factorize_u64(m)
        .into_iter()
        .map(|(q, e)| q.pow(e - 1) * (q - 1))
        .product()
}

/// Least t >= 1 with a^t = 1 modulo m. Requires gcd(a, m) = 1 and m >= 2.
pub fn order_mod(a: i64, m: u64) -> Result<u64> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    let reduced = a.rem_euclid(m as i64) as u64;
    if reduced.gcd(&m) != 1 {
        return Err(Error::NotCoprime { a, m });
    }
    // Start from the group order and strip prime factors that keep a^t = 1.
    let mut t = euler_phi(m);
    for &q in factorize_u64(t).keys() {
        while t.is_multiple_of(q) && pow_mod(reduced, t / q, m) == 1 {
            t /= q;
        }
    }
    debug_assert_eq!(pow_mod(reduced, t, m), 1);
    Ok(t)
}

/// Smallest admissible k(p): 5 at p = 2, otherwise the least positive k
/// whose negative generates the units of Z/p^2. Smallest-k is a determinism
/// convention; any valid generator gives the same valuations downstream.
pub fn choose_k(p: u64) -> Result<KChoice> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(KChoice { p: 2, k: 5 });
    }
    let mut k = 1u64;
    loop {
        if !k.is_multiple_of(p) {
            if let Ok(choice) = KChoice::new(p, k) {
                return Ok(choice);
            }
        }
        k += 1;
    }
}

/// All primes p with (p - 1) dividing n, ascending. Any such p satisfies
/// p <= n + 1.
pub fn primes_with_pminus1_dividing(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut out: Vec<u64> = divisors(n)
        .into_iter()
        .map(|d| d + 1)
        .filter(|&p| is_prime(p))
        .collect();
    out.sort_unstable();
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Prime factorization of a positive integer: the product of p^e over the
/// returned entries reconstructs n exactly; keys ascend.
pub fn factorize(n: &ExactInt) -> Result<BTreeMap<u64, u32>> {
    if !n.is_positive() {
        return Err(Error::NonPositive(n.to_string()));
    }
    if let Some(small) = n.to_u64() {
        return Ok(factorize_u64(small));
    }
    // Out of the expected range but still correct: trial-divide the bignum.
    let mut out = BTreeMap::new();
    let mut rem = n.clone();
    let mut divide_out = |rem: &mut ExactInt, q: u64| {
        let big_q = ExactInt::from(q);
        while (&*rem % &big_q).is_zero() {
            *rem /= &big_q;
            *out.entry(q).or_insert(0) += 1;
        }
    };
    for &q in small_primes() {
        divide_out(&mut rem, q);
    }
    let mut candidate = sieve().bound | 1;
    while ExactInt::from(candidate) * ExactInt::from(candidate) <= rem {
        divide_out(&mut rem, candidate);
        candidate += 2;
    }
    if !rem.is_one() {
        let q = rem
            .to_u64()
            .expect("prime factor exceeds the supported machine range");
        *out.entry(q).or_insert(0) += 1;
    }
    Ok(out)
}

/// Multiplies a factorization map back into an integer.
pub fn factorization_value(f: &BTreeMap<u64, u32>) -> ExactInt {
    f.iter().fold(ExactInt::one(), |acc, (&p, &e)| {
        acc * ExactInt::from(p).pow(e)
    })
}
