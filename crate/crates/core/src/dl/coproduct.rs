//! The Hopf-algebra coproduct: grouplike on a_0 powers, binomial on the base
//! classes (psi a_j = sum a_u (x) a_v over u + v = j), Cartan over Q's, and
//! multiplicative on products. Instability is applied while normalizing, so
//! every leg lands back in the canonical basis.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};

use super::{q_operation, DLElement, DLGenerator, DLMonomial};

/// An element of the tensor square, as a set of monomial pairs over F_2.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DLTensor {
    terms: BTreeSet<(DLMonomial, DLMonomial)>,
}

impl DLTensor {
    pub fn zero() -> Self {
        DLTensor::default()
    }

    pub fn from_pair(left: DLMonomial, right: DLMonomial) -> Self {
        let mut t = DLTensor::zero();
        t.toggle(left, right);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &(DLMonomial, DLMonomial)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn toggle(&mut self, left: DLMonomial, right: DLMonomial) {
        let pair = (left, right);
        if !self.terms.remove(&pair) {
            self.terms.insert(pair);
        }
    }

    /// Legwise product of tensors.
    fn product(&self, other: &DLTensor) -> DLTensor {
        let mut out = DLTensor::zero();
        for (al, ar) in &self.terms {
            for (bl, br) in &other.terms {
                out.toggle(al.mul(bl), ar.mul(br));
            }
        }
        out
    }

    /// Tensor product of two plain elements.
    fn of_elements(left: &DLElement, right: &DLElement) -> DLTensor {
        let mut out = DLTensor::zero();
        for l in left.monomials() {
            for r in right.monomials() {
                out.toggle(l.clone(), r.clone());
            }
        }
        out
    }
}

impl AddAssign<DLTensor> for DLTensor {
    fn add_assign(&mut self, rhs: DLTensor) {
        for (l, r) in rhs.terms {
            self.toggle(l, r);
        }
    }
}

impl Add for DLTensor {
    type Output = DLTensor;
    fn add(mut self, rhs: DLTensor) -> DLTensor {
        self += rhs;
        self
    }
}

impl fmt::Display for DLTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(l, r)| format!("{l} (x) {r}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// psi of a single generator, by recursion over the word.
fn psi_generator(g: &DLGenerator) -> DLTensor {
    match g.split_word() {
        None => {
            // psi(a_j) = sum_{u+v=j} a_u (x) a_v.
            let j = g.base();
            let mut out = DLTensor::zero();
            for u in 0..=j {
                out.toggle(DLMonomial::a(u), DLMonomial::a(j - u));
            }
            out
        }
        Some((s1, inner)) => {
            let mut out = DLTensor::zero();
            for (left_m, right_m) in psi_generator(&inner).terms {
                let left_in = DLElement::from_monomial(left_m.clone());
                let right_in = DLElement::from_monomial(right_m.clone());
                for s_left in 0..=s1 {
                    let l = q_operation(s_left, &left_in);
                    if l.is_zero() {
                        continue;
                    }
                    let r = q_operation(s1 - s_left, &right_in);
                    out += DLTensor::of_elements(&l, &r);
                }
            }
            out
        }
    }
}

/// psi of one monomial: multiplicative over factors, grouplike on the
/// translation.
pub(crate) fn coproduct_monomial(m: &DLMonomial) -> DLTensor {
    let t = m.translation();
    let mut acc = DLTensor::from_pair(
        DLMonomial::translation_power(t),
        DLMonomial::translation_power(t),
    );
    for g in m.factors() {
        acc = acc.product(&psi_generator(g));
    }
    acc
}

/// The coproduct, extended linearly. Expects a homogeneous input.
pub fn coproduct(x: &DLElement) -> DLTensor {
    debug_assert!(
        x.is_homogeneous(),
        "coproduct expects a homogeneous element"
    );
    let mut out = DLTensor::zero();
    for m in x.monomials() {
        out += coproduct_monomial(m);
    }
    out
}

/// True when the reduced coproduct vanishes: psi(x) = x (x) 1 + 1 (x) x.
/// Expects a homogeneous element of component 0.
pub fn is_primitive(x: &DLElement) -> bool {
    debug_assert!(x.is_homogeneous());
    debug_assert_eq!(x.component().unwrap_or(0), 0);
    let mut t = coproduct(x);
    for m in x.monomials() {
        t.toggle(m.clone(), DLMonomial::one());
        t.toggle(DLMonomial::one(), m.clone());
    }
    t.is_zero()
}

/// Checks (psi (x) id) psi(x) = (id (x) psi) psi(x) as sets of triples.
pub fn is_coassociative(x: &DLElement) -> bool {
    let psi = coproduct(x);
    let mut lhs: BTreeSet<(DLMonomial, DLMonomial, DLMonomial)> = BTreeSet::new();
    let mut rhs = lhs.clone();
    let toggle = |set: &mut BTreeSet<(DLMonomial, DLMonomial, DLMonomial)>,
                  triple: (DLMonomial, DLMonomial, DLMonomial)| {
        if !set.remove(&triple) {
            set.insert(triple);
        }
    };
    for (l, r) in psi.terms() {
        for (a, b) in coproduct_monomial(l).terms {
            toggle(&mut lhs, (a, b, r.clone()));
        }
        for (b, c) in coproduct_monomial(r).terms {
            toggle(&mut rhs, (l.clone(), b, c));
        }
    }
    lhs == rhs
}

/// Checks both counit laws: contracting either leg with the augmentation
/// (1 on degree-0 monomials) recovers x.
pub fn satisfies_counit(x: &DLElement) -> bool {
    let psi = coproduct(x);
    let mut left = DLElement::zero();
    let mut right = DLElement::zero();
    for (l, r) in psi.terms() {
        if l.degree() == 0 {
            // epsilon(a_0^t) = 1: drop the grouplike leg entirely.
            right.toggle(r.clone());
        }
        if r.degree() == 0 {
            left.toggle(l.clone());
        }
    }
    &left == x && &right == x
}

#[cfg(test)]
mod tests {
    use super::super::tests::{gen, mono};
    use super::*;

    #[test]
    fn a1_translated_is_primitive() {
        let x = DLElement::from_monomial(mono(vec![gen(&[], 1)], -1));
        let psi = coproduct(&x);
        // a_1 a_0^{-1} (x) 1 + 1 (x) a_1 a_0^{-1}.
        assert_eq!(psi.term_count(), 2);
        assert!(is_primitive(&x));
    }

    #[test]
    fn q1a0_translated_is_primitive() {
        let x = DLElement::from_monomial(mono(vec![gen(&[1], 0)], -2));
        assert!(is_primitive(&x));
    }

    #[test]
    fn a2_translated_is_not_primitive() {
        let x = DLElement::from_monomial(mono(vec![gen(&[], 2)], -1));
        assert!(!is_primitive(&x));
        // The surviving cross term is a_1 a_0^{-1} (x) a_1 a_0^{-1}.
        let mut reduced = coproduct(&x);
        for m in x.monomials() {
            reduced.toggle(m.clone(), DLMonomial::one());
            reduced.toggle(DLMonomial::one(), m.clone());
        }
        let a1_shifted = mono(vec![gen(&[], 1)], -1);
        assert_eq!(reduced, DLTensor::from_pair(a1_shifted.clone(), a1_shifted));
    }

    #[test]
    fn counit_and_coassociativity_low_degrees() {
        for d in 0..=4u32 {
            for m in super::super::basis::enumerate_basis(d, 0, 6).unwrap() {
                let x = DLElement::from_monomial(m.clone());
                assert!(satisfies_counit(&x), "counit fails on {m}");
                assert!(is_coassociative(&x), "coassociativity fails on {m}");
            }
        }
    }

    #[test]
    fn coproduct_preserves_degree_and_component() {
        for d in 0..=4u32 {
            for m in super::super::basis::enumerate_basis(d, 0, 6).unwrap() {
                let psi = coproduct_monomial(&m);
                for (l, r) in psi.terms() {
                    assert_eq!(l.degree() + r.degree(), d, "degree leaks on {m}");
                    assert_eq!(l.component(), 0, "left component drifts on {m}");
                    assert_eq!(r.component(), 0, "right component drifts on {m}");
                }
            }
        }
    }
}
