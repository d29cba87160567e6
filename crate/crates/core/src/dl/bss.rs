//! The low-degree classes of the zero component and the assembled
//! spectral-sequence report: cycle checks, boundary witnesses, primitivity,
//! and the torsion/Hopf-algebra conclusions derived from them.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};

use super::basis::enumerate_basis;
use super::bockstein::{bockstein_d1, d2_datum, is_d1_boundary, verify_d2_identity_for};
use super::coproduct::is_primitive;
use super::{DLElement, DLGenerator, DLMonomial};

fn gen(entries: &[u32], base: u32) -> DLGenerator {
    DLGenerator::from_parts(entries, base).expect("hard-coded generator data")
}

/// x_2 = (Q^1 a_0)^2 a_0^{-4}, degree 2.
pub fn x2() -> DLElement {
    let q1 = gen(&[1], 0);
    DLElement::from_monomial(DLMonomial::from_factors(vec![q1.clone(), q1], -4))
}

/// x_3 = Q^3 a_0 a_0^{-2} + Q^2 Q^1 a_0 a_0^{-4} + Q^2 a_0 Q^1 a_0 a_0^{-4}
///       + (Q^1 a_0)^3 a_0^{-6}, degree 3.
pub fn x3() -> DLElement {
    let q1 = gen(&[1], 0);
    DLElement::from_monomials([
        DLMonomial::from_factors(vec![gen(&[3], 0)], -2),
        DLMonomial::from_factors(vec![gen(&[2, 1], 0)], -4),
        DLMonomial::from_factors(vec![gen(&[2], 0), q1.clone()], -4),
        DLMonomial::from_factors(vec![q1.clone(), q1.clone(), q1], -6),
    ])
}

/// x_4 = a_1^2 a_0^{-2}, degree 4.
pub fn x4() -> DLElement {
    let a1 = gen(&[], 1);
    DLElement::from_monomial(DLMonomial::from_factors(vec![a1.clone(), a1], -2))
}

/// y_4 = (Q^2 a_0)^2 a_0^{-4}, degree 4.
pub fn y4() -> DLElement {
    let q2 = gen(&[2], 0);
    DLElement::from_monomial(DLMonomial::from_factors(vec![q2.clone(), q2], -4))
}

/// A verified boundary membership, rendered for the report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWitness {
    pub element: String,
    pub witness: String,
}

/// Conclusion flags; derived from the checks, never set directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BssFlags {
    /// Requires: x_3 is a d1-cycle that does not bound, and the d2 datum is
    /// congruent to x_3 modulo im(d1).
    pub h3_two_torsion_is_z4: bool,
    /// Requires primitivity of both x_4 and x_2^2.
    pub squaring_map_not_injective: bool,
    pub not_polynomial: bool,
}

/// The verification record for the mod-2 spectral-sequence computation.
#[derive(Debug, Clone)]
pub struct BssReport {
    pub cap: u32,
    /// Ambient basis sizes by (degree, component).
    pub basis_sizes: BTreeMap<(u32, i64), usize>,
    /// d1-cycle flags for the four low-degree classes.
    pub cycles: BTreeMap<String, bool>,
    pub boundaries: Vec<BoundaryWitness>,
    pub primitive: BTreeMap<String, bool>,
    pub flags: BssFlags,
    /// Torsion-free ranks of the underlying integral homology in degrees
    /// 2..4; reference data recorded alongside the mod-2 computation.
    pub free_ranks: BTreeMap<u32, u32>,
}

impl BssReport {
    /// Fixed wire format: {"basis_sizes", "cycles", "boundaries",
    /// "primitive", "flags"}.
    pub fn to_json(&self) -> Value {
        let basis_sizes: serde_json::Map<String, Value> = self
            .basis_sizes
            .iter()
            .map(|((d, c), n)| (format!("{d},{c}"), json!(n)))
            .collect();
        let boundaries: Vec<Value> = self
            .boundaries
            .iter()
            .map(|b| json!({"element": b.element, "witness": b.witness}))
            .collect();
        json!({
            "basis_sizes": basis_sizes,
            "cycles": self.cycles,
            "boundaries": boundaries,
            "primitive": self.primitive,
            "flags": {
                "h3_two_torsion_is_Z4": self.flags.h3_two_torsion_is_z4,
                "squaring_map_not_injective": self.flags.squaring_map_not_injective,
                "not_polynomial": self.flags.not_polynomial,
            },
        })
    }

    pub fn to_json_string(&self) -> String {
        self.to_json().to_string()
    }
}

/// Runs every check of the mod-2 computation at the given truncation degree
/// (at least 5, so the degree-4 boundary systems can see one degree up).
pub fn bss_report(cap: u32) -> Result<BssReport> {
    if cap < 5 {
        return Err(Error::CapTooSmall(cap, 5));
    }

    let mut basis_sizes = BTreeMap::new();
    for d in 0..=cap {
        basis_sizes.insert((d, 0), enumerate_basis(d, 0, cap)?.len());
    }

    let classes = [("x2", x2()), ("x3", x3()), ("x4", x4()), ("y4", y4())];
    let mut cycles = BTreeMap::new();
    for (name, class) in &classes {
        cycles.insert(name.to_string(), bockstein_d1(class).is_zero());
    }

    // The two extra monomials of the d2 value must die in E^2.
    let mut remainder = DLElement::from_monomial(DLMonomial::from_factors(vec![gen(&[3], 0)], -2));
    let q1 = gen(&[1], 0);
    remainder.toggle(DLMonomial::from_factors(
        vec![q1.clone(), q1.clone(), q1],
        -6,
    ));
    let remainder_check = is_d1_boundary(&remainder, cap)?;
    let mut boundaries = Vec::new();
    if let Some(w) = &remainder_check.witness {
        boundaries.push(BoundaryWitness {
            element: remainder.to_string(),
            witness: w.to_string(),
        });
    }

    let x3_bounds = is_d1_boundary(&x3(), cap)?.is_boundary;
    let d2_ok = verify_d2_identity_for(&d2_datum(), cap)?;

    let mut primitive = BTreeMap::new();
    primitive.insert("x4".to_string(), is_primitive(&x4()));
    let x2sq = &x2() * &x2();
    primitive.insert("x2^2".to_string(), is_primitive(&x2sq));

    let squaring = primitive["x4"] && primitive["x2^2"];
    let flags = BssFlags {
        h3_two_torsion_is_z4: d2_ok && !x3_bounds && remainder_check.is_boundary,
        squaring_map_not_injective: squaring,
        not_polynomial: squaring,
    };

    Ok(BssReport {
        cap,
        basis_sizes,
        cycles,
        boundaries,
        primitive,
        flags,
        free_ranks: BTreeMap::from([(2, 1), (3, 0), (4, 2)]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dl::linalg::F2Matrix;

    #[test]
    fn classes_are_distinct_homogeneous_cycles() {
        let classes = [
            ("x2", x2(), 2),
            ("x3", x3(), 3),
            ("x4", x4(), 4),
            ("y4", y4(), 4),
        ];
        for (name, class, degree) in &classes {
            assert_eq!(class.degree(), Some(*degree), "{name} degree");
            assert_eq!(class.component(), Some(0), "{name} component");
            assert!(bockstein_d1(class).is_zero(), "{name} must be a cycle");
        }
        for (i, (_, a, _)) in classes.iter().enumerate() {
            for (_, b, _) in classes.iter().skip(i + 1) {
                assert_ne!(a, b);
            }
        }
    }

    #[test]
    fn classes_plus_square_are_linearly_independent() {
        // Coordinates over the degree-2..4 bases; F_2 independence by rank.
        let x2sq = &x2() * &x2();
        let elements = [x2(), x3(), x4(), y4(), x2sq];
        let mut columns = Vec::new();
        let mut offsets = BTreeMap::new();
        let mut total_rows = 0;
        for d in [2u32, 3, 4] {
            offsets.insert(d, total_rows);
            total_rows += enumerate_basis(d, 0, 6).unwrap().len();
        }
        for e in &elements {
            let d = e.degree().unwrap();
            let basis = enumerate_basis(d, 0, 6).unwrap();
            let mut coords = vec![false; total_rows];
            for m in e.monomials() {
                let idx = basis.iter().position(|b| b == m).unwrap();
                coords[offsets[&d] + idx] = true;
            }
            columns.push(coords);
        }
        let mut matrix = F2Matrix::new(total_rows, elements.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, &bit) in col.iter().enumerate() {
                if bit {
                    matrix.set(r, c, true);
                }
            }
        }
        assert_eq!(matrix.rank(), elements.len());
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(&x4()));
        assert!(is_primitive(&(&x2() * &x2())));
        assert!(is_primitive(&x2()));
    }

    #[test]
    fn report_all_flags_true() {
        let report = bss_report(6).unwrap();
        assert!(report.cycles.values().all(|&v| v));
        assert!(report.primitive.values().all(|&v| v));
        assert!(report.flags.h3_two_torsion_is_z4);
        assert!(report.flags.squaring_map_not_injective);
        assert!(report.flags.not_polynomial);
        assert_eq!(report.boundaries.len(), 1);
        assert_eq!(report.basis_sizes[&(2, 0)], 3);
        assert_eq!(report.basis_sizes[&(3, 0)], 5);
    }

    #[test]
    fn report_stable_between_caps_five_and_six() {
        let five = bss_report(5).unwrap();
        let six = bss_report(6).unwrap();
        assert_eq!(five.cycles, six.cycles);
        assert_eq!(five.primitive, six.primitive);
        assert_eq!(five.flags, six.flags);
        assert_eq!(five.boundaries, six.boundaries);
    }

    #[test]
    fn report_rejects_small_caps() {
        assert!(matches!(bss_report(4), Err(Error::CapTooSmall(4, 5))));
    }

    #[test]
    fn report_json_shape() {
        let value = bss_report(6).unwrap().to_json();
        let obj = value.as_object().unwrap();
        let keys: Vec<_> = obj.keys().cloned().collect();
        assert_eq!(
            keys,
            vec!["basis_sizes", "boundaries", "cycles", "flags", "primitive"]
        );
        assert_eq!(obj["flags"]["h3_two_torsion_is_Z4"], true);
        assert_eq!(obj["cycles"]["x3"], true);
        assert_eq!(obj["basis_sizes"]["3,0"], 5);
        let witness = obj["boundaries"][0]["witness"].as_str().unwrap();
        assert!(witness.contains("Q^4[a0]"));
    }
}
