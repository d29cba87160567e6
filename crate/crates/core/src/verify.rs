//! The machine-checkable verification suites behind `kappa verify`. Each
//! check re-derives a published value or identity from scratch in exact
//! arithmetic and reports one PASS/FAIL line.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::One;

use crate::bernoulli::{
    bernoulli_std, bernoulli_std_akiyama_tanigawa, bernoulli_std_recurrence, den_b_over_2i,
    vsc_denominator,
};
use crate::divisor::{
    adams_valuation_closed, adams_valuation_direct, akita_vanishes, d_formula, resolve,
    ValuationLemmaQuery,
};
use crate::dl::{
    bockstein_d1, bss_report, convolve_selfmap, coproduct, d2_datum, enumerate_basis,
    is_coassociative, is_d1_boundary, is_primitive, satisfies_counit, verify_d2_identity_for, x2,
    x3, x4, y4, DLElement, DEFAULT_CAP,
};
use crate::numtheory::{choose_k, small_primes, vp_int, vp_u64, ExactInt, KChoice};
use crate::wu::{series_inverse, series_mul, wu_total_inverse, wu_vanishing_criterion, FpSeries};

/// One executed check.
#[derive(Debug, Clone)]
pub struct Check {
    pub id: &'static str,
    /// The rule the check certifies, spelled out.
    pub rule: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Divisor,
    Akita,
    Wu,
    Bernoulli,
    Bss,
    All,
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "divisor" => Ok(Suite::Divisor),
            "akita" => Ok(Suite::Akita),
            "wu" => Ok(Suite::Wu),
            "bernoulli" => Ok(Suite::Bernoulli),
            "bss" => Ok(Suite::Bss),
            "all" => Ok(Suite::All),
            other => Err(format!(
                "unknown suite '{other}'; expected divisor|akita|wu|bernoulli|bss|all"
            )),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Suite::Divisor => "divisor",
            Suite::Akita => "akita",
            Suite::Wu => "wu",
            Suite::Bernoulli => "bernoulli",
            Suite::Bss => "bss",
            Suite::All => "all",
        };
        write!(f, "{name}")
    }
}

fn check(id: &'static str, rule: &'static str, body: impl FnOnce() -> Result<(), String>) -> Check {
    let start = Instant::now();
    let outcome = body();
    let elapsed = start.elapsed();
    log::info!("check {id}: {:?} in {elapsed:?}", outcome.is_ok());
    Check {
        id,
        rule,
        passed: outcome.is_ok(),
        detail: outcome.err().unwrap_or_default(),
    }
}

fn expect_eq<T: PartialEq + fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn divisor_checks() -> Vec<Check> {
    vec![
        check(
            "divisor.golden",
            "D_1 = 2^2*3, D_3 = 2^3*3*5, D_5 = 2^2*3^2*7; D_{2m} = 2 for m <= 50",
            || {
                expect_eq("D_1", resolve(1).d_value(), ExactInt::from(12))?;
                expect_eq("D_3", resolve(3).d_value(), ExactInt::from(120))?;
                expect_eq("D_5", resolve(5).d_value(), ExactInt::from(252))?;
                for m in 1..=50u64 {
                    expect_eq("D_even", resolve(2 * m).d_value(), ExactInt::from(2))?;
                }
                Ok(())
            },
        ),
        check(
            "divisor.main-equality",
            "the valuation-formula product for D_{2m-1} equals den(B_m/2m) for m <= 100",
            || {
                for m in 1..=100u64 {
                    let i = 2 * m - 1;
                    let formula: ExactInt = d_formula(i)
                        .iter()
                        .fold(ExactInt::one(), |acc, (&p, &e)| acc * ExactInt::from(p).pow(e));
                    expect_eq("formula vs denominator", formula, den_b_over_2i(m))?;
                }
                Ok(())
            },
        ),
        check(
            "divisor.bound-shape",
            "upper/lower = 1 for even i, exactly 2 for odd i, resolve picks the lower bound with nu_2 = 1 + nu_2(i+1), i <= 100",
            || {
                for i in 1..=100u64 {
                    let r = resolve(i); // panics internally on any shape violation
                    let ratio = &r.upper / &r.lower;
                    let want = if i % 2 == 0 { 1 } else { 2 };
                    expect_eq("upper/lower", ratio, ExactInt::from(want))?;
                    expect_eq("resolve picks lower", r.d_value(), r.lower.clone())?;
                    if i % 2 == 1 {
                        let v2 = vp_int(2, &r.lower).unwrap().expect_finite();
                        expect_eq("nu_2(D)", v2, 1 + vp_u64(2, i + 1) as i64)?;
                    }
                }
                Ok(())
            },
        ),
        check(
            "divisor.adams-closed-vs-direct",
            "nu_p(1 - (-k)^s) closed form equals the exact computation for p <= 100, s <= 300",
            || {
                for &p in small_primes().iter().take_while(|&&p| p <= 100) {
                    let k = choose_k(p).map_err(|e| e.to_string())?.k;
                    for s in 1..=300 {
                        let q = ValuationLemmaQuery::new(p, k, s);
                        let closed = adams_valuation_closed(q).map_err(|e| e.to_string())?;
                        let direct = adams_valuation_direct(q).map_err(|e| e.to_string())?;
                        if closed != direct {
                            return Err(format!(
                                "mismatch at p = {p}, k = {k}, s = {s}: closed {closed}, direct {direct}"
                            ));
                        }
                    }
                }
                Ok(())
            },
        ),
        check(
            "divisor.adams-generator-invariance",
            "the direct valuations agree across 3 distinct generator choices per odd p <= 50",
            || {
                for &p in small_primes().iter().take_while(|&&p| p <= 50) {
                    if p == 2 {
                        continue;
                    }
                    let mut ks = Vec::new();
                    let mut k = 1;
                    while ks.len() < 3 {
                        if KChoice::new(p, k).is_ok() {
                            ks.push(k);
                        }
                        k += 1;
                    }
                    for s in 1..=300 {
                        let base =
                            adams_valuation_direct(ValuationLemmaQuery::new(p, ks[0], s))
                                .map_err(|e| e.to_string())?;
                        for &other in &ks[1..] {
                            let v = adams_valuation_direct(ValuationLemmaQuery::new(p, other, s))
                                .map_err(|e| e.to_string())?;
                            if v != base {
                                return Err(format!(
                                    "p = {p}, s = {s}: k = {} gives {base}, k = {other} gives {v}",
                                    ks[0]
                                ));
                            }
                        }
                    }
                }
                Ok(())
            },
        ),
    ]
}

fn akita_checks() -> Vec<Check> {
    vec![
        check(
            "akita.two-routes",
            "Wu-class criterion = congruence criterion = (p | D_i) for p <= 50, i <= 200",
            || {
                for &p in small_primes().iter().take_while(|&&p| p <= 50) {
                    for i in 1..=200u64 {
                        let by_congruence = akita_vanishes(p, i);
                        let by_wu = wu_vanishing_criterion(p, i);
                        let divides = d_formula(i).contains_key(&p);
                        if by_congruence != by_wu || by_congruence != divides {
                            return Err(format!(
                                "p = {p}, i = {i}: congruence {by_congruence}, wu {by_wu}, p|D {divides}"
                            ));
                        }
                    }
                }
                Ok(())
            },
        ),
        check(
            "akita.spot-values",
            "kappa_i mod 5 vanishes exactly at i = 3 (mod 4); p = 2 always vanishes",
            || {
                let marks: Vec<u64> = (1..=8).filter(|&i| akita_vanishes(5, i)).collect();
                expect_eq("marks mod 5 up to 8", marks, vec![3, 7])?;
                for i in 1..=32 {
                    expect_eq("p = 2", akita_vanishes(2, i), true)?;
                }
                Ok(())
            },
        ),
    ]
}

fn wu_checks() -> Vec<Check> {
    vec![
        check(
            "wu.inverse-roundtrip",
            "series * inverse = 1 up to the cap for the total Wu classes, p <= 50",
            || {
                for &p in small_primes().iter().take_while(|&&p| p <= 50) {
                    let cap = 64;
                    let mut total = FpSeries::one(p, cap);
                    if (p - 1) as usize <= cap {
                        total.set_coeff((p - 1) as usize, 1);
                    }
                    let inv = series_inverse(&total).map_err(|e| e.to_string())?;
                    let product = series_mul(&total, &inv).map_err(|e| e.to_string())?;
                    if product != FpSeries::one(p, cap) {
                        return Err(format!("roundtrip failed at p = {p}"));
                    }
                }
                Ok(())
            },
        ),
        check(
            "wu.support-law",
            "coefficient of e^m in the inverse total class is nonzero iff (p-1) | m, with value (-1)^{m/(p-1)}",
            || {
                for &p in small_primes().iter().take_while(|&&p| p <= 50) {
                    let w = wu_total_inverse(p, 64);
                    for m in 0..=64u64 {
                        let c = w.coeff(m as usize);
                        let expected = if m % (p - 1) == 0 {
                            if p == 2 || (m / (p - 1)) % 2 == 0 {
                                1
                            } else {
                                p - 1
                            }
                        } else {
                            0
                        };
                        if c != expected {
                            return Err(format!("p = {p}, e^{m}: got {c}, want {expected}"));
                        }
                    }
                }
                Ok(())
            },
        ),
    ]
}

fn bernoulli_checks() -> Vec<Check> {
    vec![
        check(
            "bernoulli.two-algorithms",
            "binomial recurrence and Akiyama-Tanigawa agree for all n <= 480",
            || {
                for n in 0..=480 {
                    if bernoulli_std_recurrence(n) != bernoulli_std_akiyama_tanigawa(n) {
                        return Err(format!("algorithms disagree at n = {n}"));
                    }
                }
                Ok(())
            },
        ),
        check(
            "bernoulli.von-staudt-clausen",
            "den(B_std(2i)) is the squarefree product of primes with (p-1) | 2i, for i <= 240",
            || {
                for i in 1..=240u64 {
                    let den = bernoulli_std(2 * i as usize).denom().clone();
                    if den != vsc_denominator(i) {
                        return Err(format!("denominator mismatch at i = {i}"));
                    }
                }
                Ok(())
            },
        ),
        check(
            "bernoulli.prime-support",
            "p | den(B_i/2i) iff p | den(B_i) for i <= 120, p <= 500",
            || {
                for i in 1..=120u64 {
                    let d = den_b_over_2i(i);
                    let vsc = vsc_denominator(i);
                    for &p in small_primes().iter().take_while(|&&p| p <= 500) {
                        let in_d = vp_int(p, &d).unwrap().expect_finite() > 0;
                        let in_vsc = vp_int(p, &vsc).unwrap().expect_finite() > 0;
                        if in_d != in_vsc {
                            return Err(format!("support differs at i = {i}, p = {p}"));
                        }
                    }
                }
                Ok(())
            },
        ),
        check(
            "bernoulli.valuation-law",
            "nu_p(den(B_i/2i)) = 1 + nu_p(2i) when (p-1) | 2i, else 0, for i <= 120",
            || {
                for i in 1..=120u64 {
                    let d = den_b_over_2i(i);
                    for &p in small_primes().iter().take_while(|&&p| p <= 500) {
                        let got = vp_int(p, &d).unwrap().expect_finite();
                        let want = if (2 * i) % (p - 1) == 0 {
                            1 + vp_u64(p, 2 * i) as i64
                        } else {
                            0
                        };
                        if got != want {
                            return Err(format!("nu_{p}(den(B_{i}/2i)) = {got}, want {want}"));
                        }
                    }
                }
                Ok(())
            },
        ),
    ]
}

fn bss_checks() -> Vec<Check> {
    vec![
        check(
            "bss.survive-to-e2",
            "d1 x_2 = d1 x_3 = d1 x_4 = d1 y_4 = 0",
            || {
                for (name, class) in [("x2", x2()), ("x3", x3()), ("x4", x4()), ("y4", y4())] {
                    if !bockstein_d1(&class).is_zero() {
                        return Err(format!("d1({name}) != 0"));
                    }
                }
                Ok(())
            },
        ),
        check(
            "bss.remainder-bounds",
            "Q^3 a_0 a_0^-2 + (Q^1 a_0)^3 a_0^-6 is a d1-boundary with a verifying witness",
            || {
                let mut r = DLElement::zero();
                for m in d2_datum().monomials() {
                    r.toggle(m.clone());
                }
                for m in x3().monomials() {
                    r.toggle(m.clone());
                }
                let chk = is_d1_boundary(&r, DEFAULT_CAP).map_err(|e| e.to_string())?;
                if !chk.is_boundary {
                    return Err("remainder is not a boundary".into());
                }
                let w = chk.witness.ok_or("missing witness")?;
                expect_eq("d1(witness)", bockstein_d1(&w), r)
            },
        ),
        check(
            "bss.x3-survives",
            "x_3 is not a d1-boundary",
            || {
                let chk = is_d1_boundary(&x3(), DEFAULT_CAP).map_err(|e| e.to_string())?;
                expect_eq("x3 bounds", chk.is_boundary, false)
            },
        ),
        check(
            "bss.d2-identity",
            "the d2 value of y_4 is a cycle congruent to x_3 mod im(d1)",
            || {
                let ok = verify_d2_identity_for(&d2_datum(), DEFAULT_CAP).map_err(|e| e.to_string())?;
                expect_eq("identity", ok, true)
            },
        ),
        check(
            "bss.primitivity",
            "x_4 and x_2^2 are primitive",
            || {
                expect_eq("x4", is_primitive(&x4()), true)?;
                expect_eq("x2^2", is_primitive(&(&x2() * &x2())), true)
            },
        ),
        check(
            "bss.report-flags",
            "two-torsion in degree 3 is Z/4; the squaring map is not injective; the algebra is not polynomial",
            || {
                let report = bss_report(DEFAULT_CAP).map_err(|e| e.to_string())?;
                expect_eq("h3", report.flags.h3_two_torsion_is_z4, true)?;
                expect_eq("squaring", report.flags.squaring_map_not_injective, true)?;
                expect_eq("polynomial", report.flags.not_polynomial, true)
            },
        ),
        check(
            "bss.d1-squares-to-zero",
            "d1 d1 = 0 on every basis monomial within the cap",
            || {
                for d in 1..=DEFAULT_CAP {
                    for m in enumerate_basis(d, 0, DEFAULT_CAP).map_err(|e| e.to_string())? {
                        let once = bockstein_d1(&DLElement::from_monomial(m.clone()));
                        if !bockstein_d1(&once).is_zero() {
                            return Err(format!("d1 d1 != 0 on {m}"));
                        }
                    }
                }
                Ok(())
            },
        ),
        check(
            "bss.derivation-law",
            "d1(xy) = d1(x) y + x d1(y) on homogeneous pairs of degree <= 3",
            || {
                let mut elements = Vec::new();
                for d in 1..=3u32 {
                    for m in enumerate_basis(d, 0, DEFAULT_CAP).map_err(|e| e.to_string())? {
                        elements.push(DLElement::from_monomial(m));
                    }
                }
                for x in &elements {
                    for y in &elements {
                        let lhs = bockstein_d1(&(x * y));
                        let rhs = &(&bockstein_d1(x) * y) + &(x * &bockstein_d1(y));
                        if lhs != rhs {
                            return Err(format!("derivation fails on {x} and {y}"));
                        }
                    }
                }
                Ok(())
            },
        ),
        check(
            "bss.coalgebra-laws",
            "the coproduct is coassociative and counital on basis elements of degree <= 4",
            || {
                for d in 0..=4u32 {
                    for m in enumerate_basis(d, 0, DEFAULT_CAP).map_err(|e| e.to_string())? {
                        let x = DLElement::from_monomial(m.clone());
                        if !is_coassociative(&x) {
                            return Err(format!("coassociativity fails on {m}"));
                        }
                        if !satisfies_counit(&x) {
                            return Err(format!("counit fails on {m}"));
                        }
                        let _ = coproduct(&x);
                    }
                }
                Ok(())
            },
        ),
        check(
            "bss.convolution",
            "the diagonal convolution of all-ones scalars vanishes in degree 2j for odd j and survives for even j",
            || {
                for j in [1u32, 3, 5, 7, 9] {
                    let e = convolve_selfmap(j, &vec![true; j as usize + 1]);
                    if !e.is_zero() {
                        return Err(format!("odd j = {j} gave {e}"));
                    }
                }
                for j in [2u32, 4, 6] {
                    let e = convolve_selfmap(j, &vec![true; j as usize + 1]);
                    if e.is_zero() {
                        return Err(format!("even j = {j} vanished"));
                    }
                }
                Ok(())
            },
        ),
    ]
}

/// Runs one suite (or all of them) and returns the executed checks.
pub fn run_suite(suite: Suite) -> Vec<Check> {
    let mut out = Vec::new();
    let mut push_suite = |s: Suite, checks: fn() -> Vec<Check>| {
        if suite == s || suite == Suite::All {
            out.extend(checks());
        }
    };
    push_suite(Suite::Divisor, divisor_checks);
    push_suite(Suite::Akita, akita_checks);
    push_suite(Suite::Wu, wu_checks);
    push_suite(Suite::Bernoulli, bernoulli_checks);
    push_suite(Suite::Bss, bss_checks);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!("divisor".parse::<Suite>().unwrap(), Suite::Divisor);
        assert_eq!("all".parse::<Suite>().unwrap(), Suite::All);
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn akita_suite_passes() {
        let checks = run_suite(Suite::Akita);
        assert_eq!(checks.len(), 2);
        for c in &checks {
            assert!(c.passed, "{}: {}", c.id, c.detail);
        }
    }

    #[test]
    fn wu_suite_passes() {
        for c in run_suite(Suite::Wu) {
            assert!(c.passed, "{}: {}", c.id, c.detail);
        }
    }
}
