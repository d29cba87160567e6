//! The divisor D_i of kappa_i in the torsion-free integral cohomology of the
//! stable mapping class group, assembled three ways and cross-checked:
//!
//! * the valuation formula nu_p(D_i) = 1 + nu_p(i+1) when (p-1) | (i+1), else 0;
//! * a lower bound (2 for even i; den(B_m/2m) for i = 2m-1) from exact
//!   Bernoulli arithmetic;
//! * an upper bound from the Adams self-map, nu_p(D_j) <= nu_p(1 - (-k)^{j+1}),
//!   evaluated literally in exact integers.
//!
//! `resolve` demands the three agree in the proven shape (equal for even i,
//! a factor of exactly 2 for odd i, settled in favor of the lower bound by
//! the two-adic rule nu_2(D_{2i-1}) = 1 + nu_2(2i)).

use std::collections::BTreeMap;

use num_traits::One;
use serde_json::{json, Value};

use crate::bernoulli::den_b_over_2i;
use crate::error::{Error, Result};
use crate::numtheory::{
    choose_k, is_prime, small_primes, vp_int, vp_u64, ExactInt, KChoice, Valuation,
};

/// A query for nu_p(1 - (-k)^s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValuationLemmaQuery {
    pub p: u64,
    pub k: u64,
    pub s: u64,
}

impl ValuationLemmaQuery {
    pub fn new(p: u64, k: u64, s: u64) -> Self {
        ValuationLemmaQuery { p, k, s }
    }
}

/// Closed form for nu_p(1 - (-k)^s), valid when -k generates the units of
/// Z/p^2 (odd p) or k = 5 mod 8 (p = 2):
///
/// * odd p: 1 + nu_p(s) if (p-1) | s, else 0;
/// * p = 2: 2 + nu_2(s) for even s, 1 for odd s.
pub fn adams_valuation_closed(q: ValuationLemmaQuery) -> Result<Valuation> {
    let ValuationLemmaQuery { p, k, s } = q;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    assert!(s >= 1, "the valuation table starts at s = 1");
    if p == 2 {
        if k % 8 != 5 {
            return Err(Error::BadKChoice {
                p,
                k,
                reason: "closed form at p = 2 requires k = 5 (mod 8)".into(),
            });
        }
        let v = if s % 2 == 0 {
            2 + vp_u64(2, s) as i64
        } else {
            1
        };
        return Ok(Valuation::Finite(v));
    }
    // Precondition: -k generates (Z/p^2)^x.
    KChoice::new(p, k)?;
    let v = if s % (p - 1) == 0 {
        1 + vp_u64(p, s) as i64
    } else {
        0
    };
    Ok(Valuation::Finite(v))
}

/// nu_p of the exact integer 1 - (-k)^s; accepts any k coprime to p.
/// Infinite only in the degenerate case 1 - (-k)^s = 0 (k = 1, s even).
pub fn adams_valuation_direct(q: ValuationLemmaQuery) -> Result<Valuation> {
    let ValuationLemmaQuery { p, k, s } = q;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k % p == 0 {
        return Err(Error::NotCoprime { a: k as i64, m: p });
    }
    assert!(s >= 1);
    let value = ExactInt::one() - ExactInt::from(-(k as i64)).pow(s as u32);
    vp_int(p, &value)
}

/// Whether kappa_i vanishes in mod-p cohomology: exactly when (p-1) | (i+1).
pub fn akita_vanishes(p: u64, i: u64) -> bool {
    debug_assert!(is_prime(p), "{p} is not prime");
    debug_assert!(i >= 1);
    // p = 2 gives p - 1 = 1, which divides everything.
    (i + 1).is_multiple_of(p - 1)
}

/// The valuation formula as a factorization map: for each prime p <= i + 2
/// with (p-1) | (i+1), the exponent 1 + nu_p(i+1); no other prime divides.
pub fn d_formula(i: u64) -> BTreeMap<u64, u32> {
    assert!(i >= 1);
    let mut out = BTreeMap::new();
    for &p in small_primes().iter().take_while(|&&p| p <= i + 2) {
        if (i + 1).is_multiple_of(p - 1) {
            out.insert(p, 1 + vp_u64(p, i + 1));
        }
    }
    out
}

/// Lower bound for D_i: 2 for even i; den(B_m/2m) for odd i = 2m - 1.
pub fn lower_bound(i: u64) -> ExactInt {
    assert!(i >= 1);
    if i.is_multiple_of(2) {
        ExactInt::from(2)
    } else {
        den_b_over_2i(i.div_ceil(2))
    }
}

/// Upper bound for D_i: the product over primes p <= i + 2 of
/// p^{nu_p(1 - (-k(p))^{i+1})}. Larger primes provably contribute nothing.
pub fn upper_bound(i: u64, ks: &BTreeMap<u64, KChoice>) -> Result<ExactInt> {
    assert!(i >= 1);
    let mut out = ExactInt::one();
    for &p in small_primes().iter().take_while(|&&p| p <= i + 2) {
        let choice = ks.get(&p).ok_or(Error::MissingKChoice(p))?;
        // Revalidate: a stale or hand-built map must not weaken the bound.
        KChoice::new(choice.p, choice.k)?;
        if choice.p != p {
            return Err(Error::MissingKChoice(p));
        }
        let v =
            adams_valuation_direct(ValuationLemmaQuery::new(p, choice.k, i + 1))?.expect_finite();
        debug_assert!(v >= 0);
        out *= ExactInt::from(p).pow(v as u32);
    }
    Ok(out)
}

/// Integral-divisibility predicates for p and p^2 against D_i.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DzPredicates {
    pub p_divides_dz: bool,
    pub p2_divides_dz: bool,
}

/// p | D_i^Z iff p | D_i, and p^2 | D_i^Z iff p^2 | D_i; exposed as
/// certified predicates on the computed exponent.
pub fn dz_predicates(p: u64, i: u64) -> DzPredicates {
    debug_assert!(is_prime(p));
    let exponent = d_formula(i).get(&p).copied().unwrap_or(0);
    DzPredicates {
        p_divides_dz: exponent >= 1,
        p2_divides_dz: exponent >= 2,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Per-index record of D_i: the factorization, both bounds, the k-choices
/// used for the upper bound, the mod-p vanishing flags, and a note naming
/// the rule used at each step.
#[derive(Debug, Clone)]
pub struct DivisorReport {
    pub index: u64,
    pub parity: Parity,
    pub d: BTreeMap<u64, u32>,
    pub lower: ExactInt,
    pub upper: ExactInt,
    pub k_choices: Vec<KChoice>,
    pub akita: BTreeMap<u64, bool>,
    pub citations: Vec<String>,
}

impl DivisorReport {
    /// Product of the prime powers in the factorization map.
    pub fn d_value(&self) -> ExactInt {
        self.d.iter().fold(ExactInt::one(), |acc, (&p, &e)| {
            acc * ExactInt::from(p).pow(e)
        })
    }

    /// Fixed wire format:
    /// {"i", "D", "D_value", "lower", "upper", "akita", "citations"}.
    pub fn to_json(&self) -> Value {
        let d: serde_json::Map<String, Value> = self
            .d
            .iter()
            .map(|(p, e)| (p.to_string(), json!(e)))
            .collect();
        let akita: serde_json::Map<String, Value> = self
            .akita
            .iter()
            .map(|(p, v)| (p.to_string(), json!(v)))
            .collect();
        json!({
            "i": self.index,
            "D": d,
            "D_value": self.d_value().to_string(),
            "lower": self.lower.to_string(),
            "upper": self.upper.to_string(),
            "akita": akita,
            "citations": self.citations,
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }

    /// Human-readable factorization, e.g. "2^2*3".
    pub fn factorization_string(&self) -> String {
        if self.d.is_empty() {
            return "1".into();
        }
        self.d
            .iter()
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Computes D_i by all three routes and asserts the proven shape. Any
/// disagreement is an implementation bug and panics.
pub fn resolve(i: u64) -> DivisorReport {
    assert!(i >= 1);
    let d = d_formula(i);
    let lower = lower_bound(i);

    let mut ks = BTreeMap::new();
    let mut k_choices = Vec::new();
    for &p in small_primes().iter().take_while(|&&p| p <= i + 2) {
        let choice = choose_k(p).expect("sieved p is prime");
        ks.insert(p, choice);
        k_choices.push(choice);
    }
    let upper = upper_bound(i, &ks).expect("k-choices cover every prime up to i + 2");

    let d_value = d.iter().fold(ExactInt::one(), |acc, (&p, &e)| {
        acc * ExactInt::from(p).pow(e)
    });
    assert_eq!(
        d_value, lower,
        "valuation formula and exact Bernoulli arithmetic disagree at i = {i}"
    );

    let parity = if i.is_multiple_of(2) {
        Parity::Even
    } else {
        Parity::Odd
    };
    match parity {
        Parity::Even => {
            assert_eq!(lower, ExactInt::from(2), "even-index lower bound must be 2");
            assert_eq!(upper, lower, "even-index bounds must coincide at i = {i}");
        }
        Parity::Odd => {
            assert_eq!(
                upper,
                ExactInt::from(2) * &lower,
                "odd-index upper bound must be exactly twice the lower at i = {i}"
            );
            let v2 = vp_int(2, &lower).unwrap().expect_finite();
            assert_eq!(
                v2,
                1 + vp_u64(2, i + 1) as i64,
                "two-adic resolution nu_2(D) = 1 + nu_2(i+1) failed at i = {i}"
            );
        }
    }

    let mut akita = BTreeMap::new();
    for &p in small_primes().iter().take_while(|&&p| p <= i + 2) {
        let vanishes = akita_vanishes(p, i);
        assert_eq!(
            vanishes,
            d.contains_key(&p),
            "vanishing flag and divisor support disagree at p = {p}, i = {i}"
        );
        akita.insert(p, vanishes);
    }

    let mut citations = vec![
        "valuation formula: nu_p(D_i) = 1 + nu_p(i+1) when (p-1) | (i+1), else 0".to_string(),
        "upper bound: Adams self-map, nu_p(D_j) <= nu_p(1 - (-k)^{j+1})".to_string(),
        "vanishing flags: kappa_i = 0 mod p iff (p-1) | (i+1)".to_string(),
    ];
    match parity {
        Parity::Even => citations.insert(
            1,
            "lower bound: 2 | kappa_{2m} from the Wu-class criterion at p = 2".to_string(),
        ),
        Parity::Odd => {
            citations.insert(
                1,
                "lower bound: den(B_m/2m) | kappa_{2m-1} from the symplectic class pullback"
                    .to_string(),
            );
            citations.push(
                "resolution: nu_2(D_{2m-1}) = 1 + nu_2(2m) settles the residual factor 2 in favor of the lower bound"
                    .to_string(),
            );
        }
    }

    DivisorReport {
        index: i,
        parity,
        d,
        lower,
        upper,
        k_choices,
        akita,
        citations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: u64, k: u64, s: u64) -> ValuationLemmaQuery {
        ValuationLemmaQuery::new(p, k, s)
    }

    #[test]
    fn closed_form_examples() {
        // Oracles: 1-16 = -15, 1+64 = 65, 1+125 = 126.
        assert_eq!(
            adams_valuation_closed(q(3, 4, 2)).unwrap(),
            Valuation::Finite(1)
        );
        assert_eq!(
            adams_valuation_closed(q(3, 4, 3)).unwrap(),
            Valuation::Finite(0)
        );
        assert_eq!(
            adams_valuation_closed(q(2, 5, 3)).unwrap(),
            Valuation::Finite(1)
        );
        // Precondition violations are rejected.
        assert!(adams_valuation_closed(q(2, 3, 2)).is_err());
        assert!(adams_valuation_closed(q(3, 2, 2)).is_err());
        assert!(adams_valuation_closed(q(9, 4, 2)).is_err());
    }

    #[test]
    fn direct_examples() {
        assert_eq!(
            adams_valuation_direct(q(2, 5, 2)).unwrap(),
            Valuation::Finite(3)
        );
        assert_eq!(
            adams_valuation_direct(q(3, 4, 2)).unwrap(),
            Valuation::Finite(1)
        );
        assert_eq!(
            adams_valuation_direct(q(5, 2, 4)).unwrap(),
            Valuation::Finite(1)
        );
        // Degenerate zero: 1 - (-1)^2 = 0.
        assert_eq!(
            adams_valuation_direct(q(3, 1, 2)).unwrap(),
            Valuation::Infinite
        );
        assert!(adams_valuation_direct(q(3, 6, 2)).is_err());
    }

    #[test]
    fn closed_matches_direct_small() {
        for p in [2u64, 3, 5, 7, 11, 13] {
            let k = choose_k(p).unwrap().k;
            for s in 1..=60 {
                assert_eq!(
                    adams_valuation_closed(q(p, k, s)).unwrap(),
                    adams_valuation_direct(q(p, k, s)).unwrap(),
                    "closed vs direct mismatch at p = {p}, k = {k}, s = {s}"
                );
            }
        }
    }

    #[test]
    fn akita_examples() {
        for i in 1..50 {
            assert!(akita_vanishes(2, i));
        }
        assert!(akita_vanishes(5, 3));
        assert!(!akita_vanishes(5, 2));
        assert!(akita_vanishes(5, 7));
    }

    #[test]
    fn d_formula_examples() {
        assert_eq!(d_formula(1), BTreeMap::from([(2, 2), (3, 1)]));
        assert_eq!(d_formula(2), BTreeMap::from([(2, 1)]));
        assert_eq!(d_formula(5), BTreeMap::from([(2, 2), (3, 2), (7, 1)]));
        for i in (2..=100u64).step_by(2) {
            assert_eq!(
                d_formula(i),
                BTreeMap::from([(2, 1)]),
                "even case at i = {i}"
            );
        }
    }

    #[test]
    fn bound_examples() {
        assert_eq!(lower_bound(4), ExactInt::from(2));
        assert_eq!(lower_bound(3), ExactInt::from(120));
        assert_eq!(lower_bound(1), ExactInt::from(12));

        let ks_for = |i: u64| {
            small_primes()
                .iter()
                .take_while(|&&p| p <= i + 2)
                .map(|&p| (p, choose_k(p).unwrap()))
                .collect::<BTreeMap<_, _>>()
        };
        assert_eq!(upper_bound(1, &ks_for(1)).unwrap(), ExactInt::from(24));
        assert_eq!(upper_bound(2, &ks_for(2)).unwrap(), ExactInt::from(2));
        assert_eq!(upper_bound(5, &ks_for(5)).unwrap(), ExactInt::from(504));
        // Missing choice rejected.
        assert_eq!(upper_bound(5, &ks_for(1)), Err(Error::MissingKChoice(5)));
        // Invalid choice rejected.
        let mut bad = ks_for(1);
        bad.insert(3, KChoice { p: 3, k: 2 });
        assert!(upper_bound(1, &bad).is_err());
    }

    #[test]
    fn resolve_examples() {
        let r3 = resolve(3);
        assert_eq!(r3.d_value(), ExactInt::from(120));
        assert_eq!(r3.lower, ExactInt::from(120));
        assert_eq!(r3.upper, ExactInt::from(240));

        let r2 = resolve(2);
        assert_eq!(r2.d_value(), ExactInt::from(2));
        assert_eq!(r2.lower, ExactInt::from(2));
        assert_eq!(r2.upper, ExactInt::from(2));

        // den((5/66)/10) = 132, cross-checked against the formula map.
        let r9 = resolve(9);
        assert_eq!(r9.d_value(), ExactInt::from(132));
        assert_eq!(r9.d, BTreeMap::from([(2, 2), (3, 1), (11, 1)]));
    }

    #[test]
    fn dz_examples() {
        assert_eq!(
            dz_predicates(3, 1),
            DzPredicates {
                p_divides_dz: true,
                p2_divides_dz: false
            }
        );
        assert_eq!(
            dz_predicates(3, 5),
            DzPredicates {
                p_divides_dz: true,
                p2_divides_dz: true
            }
        );
        assert_eq!(
            dz_predicates(7, 2),
            DzPredicates {
                p_divides_dz: false,
                p2_divides_dz: false
            }
        );
    }

    #[test]
    fn report_json_has_fixed_fields() {
        let value = resolve(3).to_json();
        let obj = value.as_object().unwrap();
        let keys: Vec<_> = obj.keys().cloned().collect();
        assert_eq!(
            keys,
            vec!["D", "D_value", "akita", "citations", "i", "lower", "upper"]
        );
        assert_eq!(obj["D_value"], "120");
        assert_eq!(obj["D"]["2"], 3);
        assert_eq!(obj["akita"]["5"], true);
    }
}
