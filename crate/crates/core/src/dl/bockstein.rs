//! The first Bockstein differential d1 and the F_2 boundary solver behind
//! the spectral-sequence checks.
//!
//! d1 is a derivation over the product with d1(a_j) = 0 and
//! d1(Q^s y) = (s-1) Q^{s-1} y + Q^s d1(y), everything normalized through
//! the instability rules. Squares die (characteristic-2 derivation), which
//! is what makes the four low-degree classes survive.

use std::collections::HashMap;

use crate::error::{Error, Result};

use super::basis::enumerate_basis;
use super::bss::x3;
use super::linalg::F2Matrix;
use super::{q_on_generator, q_operation, DLElement, DLGenerator, DLMonomial, DEFAULT_CAP};

/// d1 on a single generator, by recursion over the word.
fn d1_generator(g: &DLGenerator) -> DLElement {
    let Some((s1, inner)) = g.split_word() else {
        return DLElement::zero(); // d1 a_j = 0
    };
    let mut out = DLElement::zero();
    if s1 >= 1 && (s1 - 1) % 2 == 1 {
        out += q_on_generator(s1 - 1, &inner);
    }
    out += q_operation(s1, &d1_generator(&inner));
    out
}

fn d1_monomial(m: &DLMonomial) -> DLElement {
    let mut out = DLElement::zero();
    for (g, mult) in m.factor_multiplicities() {
        if mult % 2 == 0 {
            continue;
        }
        let rest = DLElement::from_monomial(m.without_one(&g));
        out += &d1_generator(&g) * &rest;
    }
    out
}

/// The standard Bockstein d1, extended as a derivation. Degree drops by one;
/// the component is preserved.
pub fn bockstein_d1(x: &DLElement) -> DLElement {
    debug_assert!(x.is_homogeneous(), "d1 expects a homogeneous element");
    let mut out = DLElement::zero();
    for m in x.monomials() {
        out += d1_monomial(m);
    }
    out
}

/// Result of a boundary query: membership in im(d1) plus a verifying
/// preimage when one exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryCheck {
    pub is_boundary: bool,
    pub witness: Option<DLElement>,
}

/// Solves d1(w) = x over the canonical basis one degree up, inside the given
/// cap. The witness, when present, satisfies bockstein_d1(witness) = x
/// exactly (checked before returning).
pub fn is_d1_boundary(x: &DLElement, cap: u32) -> Result<BoundaryCheck> {
    if x.is_zero() {
        return Ok(BoundaryCheck {
            is_boundary: true,
            witness: Some(DLElement::zero()),
        });
    }
    assert!(
        x.is_homogeneous(),
        "boundary query expects a homogeneous element"
    );
    let degree = x
        .degree()
        .expect("nonzero homogeneous element has a degree");
    let component = x.component().expect("single component");
    if degree + 1 > cap {
        return Err(Error::DegreeAboveCap {
            degree,
            cap: cap.saturating_sub(1),
        });
    }

    let source = enumerate_basis(degree + 1, component, cap)?;
    let target = enumerate_basis(degree, component, cap)?;
    let row_of: HashMap<&DLMonomial, usize> =
        target.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let mut matrix = F2Matrix::new(target.len(), source.len());
    for (col, w) in source.iter().enumerate() {
        for m in d1_monomial(w).monomials() {
            let row = *row_of
                .get(m)
                .expect("d1 of a basis monomial stays in the canonical basis");
            matrix.set(row, col, true);
        }
    }
    let mut rhs = vec![false; target.len()];
    for m in x.monomials() {
        let row = *row_of
            .get(m)
            .expect("query monomial lies in the canonical basis");
        rhs[row] = true;
    }

    match matrix.solve(&rhs) {
        None => Ok(BoundaryCheck {
            is_boundary: false,
            witness: None,
        }),
        Some(coords) => {
            let witness = DLElement::from_monomials(
                coords
                    .iter()
                    .zip(&source)
                    .filter(|(&c, _)| c)
                    .map(|(_, m)| m.clone()),
            );
            assert_eq!(
                &bockstein_d1(&witness),
                x,
                "witness must reproduce the query"
            );
            Ok(BoundaryCheck {
                is_boundary: true,
                witness: Some(witness),
            })
        }
    }
}

/// The displayed value of d2 on y_4, taken as an input datum:
/// x_3 + (Q^3 a_0) a_0^{-2} + (Q^1 a_0)^3 a_0^{-6}. Over F_2 the two extra
/// monomials cancel against x_3's copies, leaving the two mixed terms.
pub fn d2_datum() -> DLElement {
    let mut out = x3();
    out.toggle(DLMonomial::from_factors(
        vec![DLGenerator::from_parts(&[3], 0).expect("Q^3 a_0")],
        -2,
    ));
    let q1 = DLGenerator::from_parts(&[1], 0).expect("Q^1 a_0");
    out.toggle(DLMonomial::from_factors(
        vec![q1.clone(), q1.clone(), q1],
        -6,
    ));
    out
}

/// Checks that a candidate value for d2(y_4) is a d1-cycle congruent to x_3
/// modulo im(d1), with x_3 itself not a boundary — the three facts that pin
/// the nonzero differential into E^2 degree 3.
pub fn verify_d2_identity_for(datum: &DLElement, cap: u32) -> Result<bool> {
    let x3 = x3();
    let is_cycle = bockstein_d1(datum).is_zero();
    let congruent = is_d1_boundary(&(datum + &x3), cap)?.is_boundary;
    let x3_survives = !is_d1_boundary(&x3, cap)?.is_boundary;
    Ok(is_cycle && congruent && x3_survives)
}

/// The identity check with the canonical datum at the default cap.
pub fn verify_d2_identity() -> bool {
    verify_d2_identity_for(&d2_datum(), DEFAULT_CAP)
        .expect("default cap covers every degree the check touches")
}
