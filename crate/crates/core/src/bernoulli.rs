//! Exact Bernoulli numbers, von Staudt-Clausen denominators, and den(B_i/2i).
//!
//! Two conventions live side by side:
//!
//! * `bernoulli_std(n)` is the generating-function value B_n from
//!   t/(e^t - 1) = sum B_n t^n / n!  (so B_1 = -1/2, odd n >= 3 give 0).
//! * `bernoulli_paper(i)` is B_i := |B_std(2i)|, indexed by i >= 1. This is
//!   the unique standard convention under which den(B_1/2) = 12,
//!   den(B_2/4) = 120 and den(B_3/6) = 252, matching the divisor table.
//!
//! The standard values are computed by two independent algorithms — the
//! binomial recurrence and the Akiyama-Tanigawa triangle — which are checked
//! against each other on every extension of the shared memo table.

use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};

use crate::numtheory::{primes_with_pminus1_dividing, ExactInt, ExactRat};

/// A Bernoulli number in both conventions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliValue {
    /// Index i >= 1 in the absolute-value convention.
    pub index: u64,
    /// B_i = |B_std(2i)|; its denominator is squarefree with prime support
    /// { p : (p-1) | 2i }.
    pub paper_value: ExactRat,
    /// The underlying generating-function value B_std(2i).
    pub std_value: ExactRat,
}

#[derive(Default)]
struct Tables {
    /// B_std(n) by the recurrence sum_{k=0}^{n} C(n+1, k) B_k = 0.
    recurrence: Vec<ExactRat>,
    /// B_std(n) by the Akiyama-Tanigawa triangle.
    tanigawa: Vec<ExactRat>,
    /// Working row of the triangle, reused across extensions.
    tanigawa_row: Vec<ExactRat>,
}

fn tables() -> &'static Mutex<Tables> {
    static TABLES: OnceLock<Mutex<Tables>> = OnceLock::new();
    TABLES.get_or_init(|| Mutex::new(Tables::default()))
}

fn extend_recurrence(t: &mut Tables, n: usize) {
    while t.recurrence.len() <= n {
        let m = t.recurrence.len();
        if m == 0 {
            t.recurrence.push(ExactRat::one());
            continue;
        }
        // B_m = -1/(m+1) * sum_{k=0}^{m-1} C(m+1, k) B_k.
        let mut sum = ExactRat::zero();
        let mut binom = ExactInt::one(); // C(m+1, 0)
        for k in 0..m {
            sum += ExactRat::from_integer(binom.clone()) * &t.recurrence[k];
            binom = binom * ExactInt::from(m + 1 - k) / ExactInt::from(k + 1);
        }
        let value = -sum / ExactRat::from_integer(ExactInt::from(m + 1));
        t.recurrence.push(value);
    }
}

fn extend_tanigawa(t: &mut Tables, n: usize) {
    while t.tanigawa.len() <= n {
        let m = t.tanigawa.len();
        t.tanigawa_row
            .push(ExactRat::new(ExactInt::one(), ExactInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &t.tanigawa_row[j - 1] - &t.tanigawa_row[j];
            t.tanigawa_row[j - 1] = ExactRat::from_integer(ExactInt::from(j)) * diff;
        }
        // The triangle produces the B_1 = +1/2 convention; flip at n = 1.
        let value = if m == 1 {
            -t.tanigawa_row[0].clone()
        } else {
            t.tanigawa_row[0].clone()
        };
        t.tanigawa.push(value);
    }
}

/// B_std(n) by the binomial recurrence alone.
pub fn bernoulli_std_recurrence(n: usize) -> ExactRat {
    let mut t = tables().lock().unwrap();
    extend_recurrence(&mut t, n);
    t.recurrence[n].clone()
}

/// B_std(n) by the Akiyama-Tanigawa triangle alone.
pub fn bernoulli_std_akiyama_tanigawa(n: usize) -> ExactRat {
    let mut t = tables().lock().unwrap();
    extend_tanigawa(&mut t, n);
    t.tanigawa[n].clone()
}

/// B_std(n), computed by both algorithms; disagreement is an implementation
/// bug and panics.
pub fn bernoulli_std(n: usize) -> ExactRat {
    let mut t = tables().lock().unwrap();
    extend_recurrence(&mut t, n);
    extend_tanigawa(&mut t, n);
    assert_eq!(
        t.recurrence[n], t.tanigawa[n],
        "Bernoulli algorithms disagree at n = {n}"
    );
    t.recurrence[n].clone()
}

/// B_i in the absolute-value convention, together with its standard twin.
pub fn bernoulli_paper(i: u64) -> BernoulliValue {
    assert!(i >= 1, "paper-convention Bernoulli numbers start at i = 1");
    let std_value = bernoulli_std(2 * i as usize);
    let value = BernoulliValue {
        index: i,
        paper_value: std_value.abs(),
        std_value,
    };
    // Type invariant: the denominator is the von Staudt-Clausen product.
    assert_eq!(
        *value.paper_value.denom(),
        vsc_denominator(i),
        "denominator invariant broken at i = {i}"
    );
    value
}

/// The von Staudt-Clausen denominator: the (squarefree) product of all
/// primes p with (p-1) | 2i. Equals den(B_std(2i)).
pub fn vsc_denominator(i: u64) -> ExactInt {
    assert!(i >= 1);
    primes_with_pminus1_dividing(2 * i)
        .into_iter()
        .fold(ExactInt::one(), |acc, p| acc * ExactInt::from(p))
}

/// den(B_i / 2i) in lowest terms — the odd-index divisor D_{2i-1}.
pub fn den_b_over_2i(i: u64) -> ExactInt {
    let b = bernoulli_paper(i).paper_value;
    let quotient = b / ExactRat::from_integer(ExactInt::from(2 * i));
    quotient.denom().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{vp, vp_int, Valuation};

    fn rat(n: i64, d: i64) -> ExactRat {
        ExactRat::new(n.into(), d.into())
    }

    #[test]
    fn std_examples() {
        assert_eq!(bernoulli_std(0), ExactRat::one());
        assert_eq!(bernoulli_std(1), rat(-1, 2));
        assert_eq!(bernoulli_std(2), rat(1, 6));
        assert_eq!(bernoulli_std(12), rat(-691, 2730));
        for n in [3usize, 5, 7, 9, 11] {
            assert!(bernoulli_std(n).is_zero(), "B_{n} should vanish");
        }
    }

    #[test]
    fn algorithms_agree_low_range() {
        for n in 0..=60 {
            assert_eq!(
                bernoulli_std_recurrence(n),
                bernoulli_std_akiyama_tanigawa(n),
                "mismatch at n = {n}"
            );
        }
    }

    #[test]
    fn paper_examples() {
        assert_eq!(bernoulli_paper(1).paper_value, rat(1, 6));
        assert_eq!(bernoulli_paper(2).paper_value, rat(1, 30));
        assert_eq!(bernoulli_paper(3).paper_value, rat(1, 42));
        assert_eq!(bernoulli_paper(5).paper_value, rat(5, 66));
        assert!(bernoulli_paper(7).paper_value.is_positive());
    }

    #[test]
    fn vsc_examples() {
        assert_eq!(vsc_denominator(1), ExactInt::from(6));
        assert_eq!(vsc_denominator(3), ExactInt::from(42));
        assert_eq!(vsc_denominator(6), ExactInt::from(2730));
        assert_eq!(vsc_denominator(6), bernoulli_std(12).denom().abs());
    }

    #[test]
    fn den_examples() {
        assert_eq!(den_b_over_2i(1), ExactInt::from(12));
        assert_eq!(den_b_over_2i(2), ExactInt::from(120));
        assert_eq!(den_b_over_2i(3), ExactInt::from(252));
        assert_eq!(den_b_over_2i(5), ExactInt::from(132));
    }

    #[test]
    fn vsc_matches_denominator_midrange() {
        for i in 1..=60u64 {
            assert_eq!(
                vsc_denominator(i),
                bernoulli_std(2 * i as usize).denom().abs(),
                "von Staudt-Clausen failed at i = {i}"
            );
        }
    }

    #[test]
    fn prime_support_equivalence_midrange() {
        // p | den(B_i/2i) iff p | den(B_i), spot-checked below the acceptance range.
        for i in 1..=40u64 {
            let d = den_b_over_2i(i);
            let vsc = vsc_denominator(i);
            for &p in crate::numtheory::small_primes()
                .iter()
                .take_while(|&&p| p <= 500)
            {
                let in_d = !vp_int(p, &d).unwrap().expect_finite().is_zero();
                let in_vsc = !vp_int(p, &vsc).unwrap().expect_finite().is_zero();
                assert_eq!(in_d, in_vsc, "support mismatch at i = {i}, p = {p}");
            }
        }
    }

    #[test]
    fn valuation_law_midrange() {
        // vp(den(B_i/2i)) = 1 + vp(2i) exactly when (p-1) | 2i.
        for i in 1..=40u64 {
            let d = ExactRat::from_integer(den_b_over_2i(i));
            for &p in crate::numtheory::small_primes()
                .iter()
                .take_while(|&&p| p <= 200)
            {
                let expected = if (2 * i) % (p - 1) == 0 {
                    1 + vp(p, &ExactRat::from_integer(ExactInt::from(2 * i)))
                        .unwrap()
                        .expect_finite()
                } else {
                    0
                };
                assert_eq!(vp(p, &d).unwrap(), Valuation::Finite(expected));
            }
        }
    }
}
