//! The valuation-like function `nu = (nu', nu'')`.
//!
//! `nu'` records orders of vanishing along the boundary flag
//! `Y_1 = E_1`, `Y_2 = E_1 ∩ E_2`, ...; each step divides out the largest
//! power of the boundary section and restricts the quotient to the next model
//! down. `nu''` is the lex-minimal exponent of what is left, expressed in the
//! chart variables of the closed orbit.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{AlgebraError, Polynomial, Rational};
use crate::models::{DivisorClass, VarietyModel};

/// Natural-number vector, ordered lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ValueVector(pub Vec<u32>);

impl ValueVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ValueVector) -> ValueVector {
        ValueVector(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn add(&self, other: &ValueVector) -> ValueVector {
        ValueVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn to_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&x| i64::from(x)).collect()
    }
}

impl fmt::Display for ValueVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuationError {
    #[error("order of zero section undefined")]
    ZeroSection,
    #[error("section is not in the section space of class {0}")]
    NotInSectionSpace(DivisorClass),
    #[error("basis is linearly dependent")]
    DependentBasis,
    #[error("adapted-basis reduction produced a value entry above the bound {bound}")]
    BoundExceeded { bound: u32 },
    #[error("adapted-basis reduction did not increase the value {0}")]
    Stalled(ValueVector),
    #[error("a nonzero section restricted to zero on {0}")]
    RestrictionVanished(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `nu'(s)` together with the residual `s / (s_1^a_1 ... s_r^a_r)` restricted
/// to `Y_r`, as a polynomial in the chart variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialValue {
    pub prefix: ValueVector,
    pub residual: Polynomial,
}

pub fn nu_prime(
    model: &VarietyModel,
    divisor: &DivisorClass,
    s: &Polynomial,
) -> Result<PartialValue, ValuationError> {
    if s.is_zero() {
        return Err(ValuationError::ZeroSection);
    }
    let mut prefix = Vec::new();
    let residual = descend(model, divisor.clone(), s.clone(), &mut prefix)?;
    Ok(PartialValue {
        prefix: ValueVector(prefix),
        residual,
    })
}

fn descend(
    model: &VarietyModel,
    divisor: DivisorClass,
    s: Polynomial,
    prefix: &mut Vec<u32>,
) -> Result<Polynomial, ValuationError> {
    if !model.in_section_space(&divisor, &s) {
        return Err(ValuationError::NotInSectionSpace(divisor));
    }
    let Some(e1) = model.boundary.first() else {
        let residual = s.substitute(&model.orbit_parametrization)?;
        if residual.is_zero() {
            return Err(ValuationError::RestrictionVanished(model.name.clone()));
        }
        return Ok(residual);
    };
    let restriction = model
        .restriction
        .as_ref()
        .ok_or_else(|| ValuationError::RestrictionVanished(model.name.clone()))?;
    let (a, quotient) = s.divide_power(&e1.section)?;
    prefix.push(a);
    let restricted = quotient.substitute(&restriction.coordinate_map)?;
    if restricted.is_zero() {
        return Err(ValuationError::RestrictionVanished(restriction.target.name.clone()));
    }
    let class = restriction.restrict_class(&divisor.sub_scaled(&e1.class, i64::from(a)));
    descend(&restriction.target, class, restricted, prefix)
}

/// Lex-minimal exponent of a residual in chart variables.
pub fn nu_second(residual: &Polynomial) -> Result<ValueVector, ValuationError> {
    residual
        .lex_min_term()
        .map(|(e, _)| ValueVector(e.clone()))
        .ok_or(ValuationError::ZeroSection)
}

pub fn nu_full(
    model: &VarietyModel,
    divisor: &DivisorClass,
    s: &Polynomial,
) -> Result<ValueVector, ValuationError> {
    valuate(model, divisor, s).map(|v| v.value)
}

/// `nu(s)` and the coefficient of the residual's lex-minimal term. Two
/// sections with the same value cancel against each other in that
/// coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valued {
    pub value: ValueVector,
    pub leading_coefficient: Rational,
}

pub fn valuate(
    model: &VarietyModel,
    divisor: &DivisorClass,
    s: &Polynomial,
) -> Result<Valued, ValuationError> {
    let partial = nu_prime(model, divisor, s)?;
    let (exponent, c) = partial
        .residual
        .lex_min_term()
        .ok_or(ValuationError::ZeroSection)?;
    Ok(Valued {
        value: partial.prefix.concat(&ValueVector(exponent.clone())),
        leading_coefficient: c.clone(),
    })
}

/// A basis of a subspace whose members have pairwise distinct values, sorted
/// by value. The values are exactly `{nu(s) : s != 0 in the span}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedBasis {
    pub values: Vec<ValueVector>,
    pub sections: Vec<Polynomial>,
}

impl AdaptedBasis {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn value_bound(model: &VarietyModel, basis: &[Polynomial]) -> u32 {
    let degree = basis.iter().filter_map(Polynomial::total_degree).max().unwrap_or(0);
    let chart = model
        .orbit_parametrization
        .iter()
        .filter_map(Polynomial::total_degree)
        .max()
        .unwrap_or(1)
        .max(1);
    degree * chart
}

/// Gaussian elimination on values: while two members share a value, the
/// later one is replaced by the combination cancelling the shared leading
/// coefficient, which strictly raises its value.
pub fn subspace_values(
    model: &VarietyModel,
    divisor: &DivisorClass,
    basis: &[Polynomial],
) -> Result<AdaptedBasis, ValuationError> {
    let bound = value_bound(model, basis);
    let mut items = basis
        .iter()
        .map(|s| match valuate(model, divisor, s) {
            Ok(v) => Ok((s.clone(), v)),
            Err(ValuationError::ZeroSection) => Err(ValuationError::DependentBasis),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<_>, _>>()?;

    loop {
        items.sort_by(|a, b| a.1.value.cmp(&b.1.value));
        let Some(i) = (1..items.len()).find(|&i| items[i - 1].1.value == items[i].1.value) else {
            break;
        };
        let (pivot, pivot_value) = &items[i - 1];
        let (other, other_value) = &items[i];
        let factor = &other_value.leading_coefficient / &pivot_value.leading_coefficient;
        let reduced = other - &pivot.scale(&factor);
        if reduced.is_zero() {
            return Err(ValuationError::DependentBasis);
        }
        let v = valuate(model, divisor, &reduced)?;
        if v.value <= other_value.value {
            return Err(ValuationError::Stalled(v.value));
        }
        if v.value.0.iter().any(|&x| x > bound) {
            return Err(ValuationError::BoundExceeded { bound });
        }
        items[i] = (reduced, v);
    }

    Ok(AdaptedBasis {
        values: items.iter().map(|(_, v)| v.value.clone()).collect(),
        sections: items.into_iter().map(|(s, _)| s).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{decompose_sections, Direction};
    use crate::models::load_model;
    use proptest::prelude::*;

    fn class(v: &[i64]) -> DivisorClass {
        DivisorClass(v.to_vec())
    }

    fn vv(v: &[u32]) -> ValueVector {
        ValueVector(v.to_vec())
    }

    #[test]
    fn nu_prime_examples() {
        let m = load_model("pgl2_wonderful").unwrap();
        let det = m.parse_polynomial("a*d - b*c").unwrap();
        let p = nu_prime(&m, &class(&[2]), &det).unwrap();
        assert_eq!(p.prefix, vv(&[1]));
        assert_eq!(p.residual, Polynomial::one(2));

        let a = m.parse_polynomial("a").unwrap();
        let p = nu_prime(&m, &class(&[1]), &a).unwrap();
        assert_eq!((p.prefix, p.residual), (vv(&[0]), Polynomial::one(2)));

        let p = nu_prime(&m, &class(&[4]), &det.pow(2)).unwrap();
        assert_eq!((p.prefix, p.residual), (vv(&[2]), Polynomial::one(2)));

        assert_eq!(
            nu_prime(&m, &class(&[1]), &Polynomial::zero(4)),
            Err(ValuationError::ZeroSection)
        );
        assert!(matches!(
            nu_prime(&m, &class(&[2]), &a),
            Err(ValuationError::NotInSectionSpace(_))
        ));
    }

    #[test]
    fn nu_second_examples() {
        let names = vec!["u".to_string(), "v".to_string()];
        let r = Polynomial::parse("u^2*v", &names).unwrap();
        assert_eq!(nu_second(&r).unwrap(), vv(&[2, 1]));
        let r = Polynomial::parse("1 + u", &names).unwrap();
        assert_eq!(nu_second(&r).unwrap(), vv(&[0, 0]));
        assert!(nu_second(&Polynomial::zero(2)).is_err());

        let m = load_model("pgl2_wonderful").unwrap();
        let d2 = m.parse_polynomial("d^2").unwrap();
        let residual = nu_prime(&m, &class(&[2]), &d2).unwrap().residual;
        assert_eq!(nu_second(&residual).unwrap(), vv(&[2, 2]));
    }

    #[test]
    fn nu_full_examples() {
        let m = load_model("pgl2_wonderful").unwrap();
        let value = |s: &str, deg: i64| nu_full(&m, &class(&[deg]), &m.parse_polynomial(s).unwrap()).unwrap();
        assert_eq!(value("a*d - b*c", 2), vv(&[1, 0, 0]));
        assert_eq!(value("a", 1), vv(&[0, 0, 0]));
        assert_eq!(value("d", 1), vv(&[0, 1, 1]));
    }

    #[test]
    fn subspace_value_examples() {
        let p1 = load_model("p1_sl2").unwrap();
        let basis: Vec<Polynomial> = ["x0^2", "x0*x1", "x1^2"]
            .iter()
            .map(|s| p1.parse_polynomial(s).unwrap())
            .collect();
        let adapted = subspace_values(&p1, &class(&[2]), &basis).unwrap();
        assert_eq!(adapted.values, vec![vv(&[0]), vv(&[1]), vv(&[2])]);

        let single = subspace_values(&p1, &class(&[2]), &basis[1..2]).unwrap();
        assert_eq!(single.values, vec![vv(&[1])]);

        let q = load_model("pgl2_wonderful").unwrap();
        let basis: Vec<Polynomial> = ["a", "b", "c", "d"]
            .iter()
            .map(|s| q.parse_polynomial(s).unwrap())
            .collect();
        let adapted = subspace_values(&q, &class(&[1]), &basis).unwrap();
        assert_eq!(
            adapted.values,
            vec![vv(&[0, 0, 0]), vv(&[0, 0, 1]), vv(&[0, 1, 0]), vv(&[0, 1, 1])]
        );
    }

    #[test]
    fn reduction_handles_shared_values() {
        let q = load_model("pgl2_wonderful").unwrap();
        // a + d and a share the value 0; the reduction must separate them
        let basis: Vec<Polynomial> = ["a + d", "a", "b"]
            .iter()
            .map(|s| q.parse_polynomial(s).unwrap())
            .collect();
        let adapted = subspace_values(&q, &class(&[1]), &basis).unwrap();
        assert_eq!(adapted.values, vec![vv(&[0, 0, 0]), vv(&[0, 0, 1]), vv(&[0, 1, 1])]);

        let dependent: Vec<Polynomial> = ["a + d", "a", "d"]
            .iter()
            .map(|s| q.parse_polynomial(s).unwrap())
            .collect();
        assert_eq!(
            subspace_values(&q, &class(&[1]), &dependent),
            Err(ValuationError::DependentBasis)
        );
    }

    #[test]
    fn values_per_piece_match_dimensions() {
        for name in ["p1xp1_sl2sl2", "p2_sl3", "pgl2_wonderful"] {
            let m = load_model(name).unwrap();
            for d in crate::models::divisor_grid(m.picard_rank, 3) {
                let mut all = Vec::new();
                for piece in decompose_sections(&m, &d).unwrap() {
                    let adapted = subspace_values(&m, &d, &piece.basis).unwrap();
                    assert_eq!(adapted.len(), piece.dimension());
                    all.extend(adapted.values);
                }
                let n = all.len();
                all.sort();
                all.dedup();
                assert_eq!(all.len(), n, "{name} {d}");
            }
        }
    }

    #[test]
    fn generic_combination_attains_minimum() {
        use rand::{Rng, SeedableRng};
        let m = load_model("pgl2_wonderful").unwrap();
        let d = class(&[3]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for piece in decompose_sections(&m, &d).unwrap() {
            let adapted = subspace_values(&m, &d, &piece.basis).unwrap();
            let mut s = Polynomial::zero(4);
            for b in &piece.basis {
                let c = Rational::from_integer(rng.gen_range(1..1000i64).into());
                s = &s + &b.scale(&c);
            }
            assert_eq!(nu_full(&m, &d, &s).unwrap(), adapted.values[0]);
        }
    }

    #[test]
    fn raising_and_lowering_do_not_decrease_nu_prime() {
        let m = load_model("pgl2_wonderful").unwrap();
        for deg in 1..=4 {
            let d = class(&[deg]);
            for piece in decompose_sections(&m, &d).unwrap() {
                let first = nu_prime(&m, &d, &piece.basis[0]).unwrap().prefix;
                for b in &piece.basis {
                    let v = nu_prime(&m, &d, b).unwrap().prefix;
                    assert_eq!(v, first);
                    for dir in [Direction::Raise, Direction::Lower] {
                        for i in 0..2 {
                            let image = m.action.apply_derivation(dir, i, b).unwrap();
                            if !image.is_zero() {
                                assert!(nu_prime(&m, &d, &image).unwrap().prefix >= v);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn monomial_values_are_additive() {
        for name in ["p2_sl3", "pgl2_wonderful", "p1xp1_sl2sl2"] {
            let m = load_model(name).unwrap();
            let grid = crate::models::divisor_grid(m.picard_rank, 2);
            for d in &grid {
                for e in &grid {
                    for x in m.section_space_basis(d) {
                        for y in m.section_space_basis(e) {
                            let s = Polynomial::monomial(m.nvars(), x.clone(), Rational::from_integer(1.into()));
                            let t = Polynomial::monomial(m.nvars(), y.clone(), Rational::from_integer(1.into()));
                            let sum = nu_full(&m, d, &s).unwrap().add(&nu_full(&m, e, &t).unwrap());
                            assert_eq!(nu_full(&m, &d.add(e), &(&s * &t)).unwrap(), sum);
                        }
                    }
                }
            }
        }
    }

    fn section(m: &VarietyModel, d: &DivisorClass, coeffs: &[i64]) -> Polynomial {
        let basis = m.section_space_basis(d);
        let c: Vec<Rational> = coeffs.iter().map(|&x| Rational::from_integer(x.into())).collect();
        Polynomial::from_coordinates(m.nvars(), &basis, &c)
    }

    proptest! {
        #[test]
        fn sum_is_at_least_the_minimum(
            name in prop::sample::select(vec!["p2_sl3", "pgl2_wonderful"]),
            s in prop::collection::vec(-2i64..=2, 10),
            t in prop::collection::vec(-2i64..=2, 10),
        ) {
            let m = load_model(name).unwrap();
            let d = class(&[2]);
            let (s, t) = (section(&m, &d, &s), section(&m, &d, &t));
            prop_assume!(!s.is_zero() && !t.is_zero());
            let sum = &s + &t;
            prop_assume!(!sum.is_zero());
            let lower = nu_full(&m, &d, &s).unwrap().min(nu_full(&m, &d, &t).unwrap());
            prop_assert!(nu_full(&m, &d, &sum).unwrap() >= lower);
        }
    }
}
