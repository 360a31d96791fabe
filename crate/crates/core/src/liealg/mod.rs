//! Weights, Chevalley generators acting as derivations on coordinate rings,
//! and decomposition of section spaces into highest-weight modules.
//!
//! Unipotent invariants are never built from a group; a section is a
//! highest-weight vector exactly when every raising operator kills it.

mod decompose;
mod weight;

pub use decompose::{decompose_monomials, decompose_sections, u_invariant_generators, IsotypicPiece};
pub use weight::{GroupType, Weight};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{Exponent, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("operator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("model violates multiplicity-freeness: weight {weight} has {count} highest-weight vectors")]
    MultiplicityViolation { weight: Weight, count: usize },
    #[error("piece of highest weight {weight} has dimension {found}, Weyl dimension is {expected}")]
    DimensionMismatch {
        weight: Weight,
        expected: u64,
        found: usize,
    },
    #[error("pieces span {spanned} of {total} dimensions of the section space")]
    Incomplete { spanned: usize, total: usize },
    #[error("lowering left the section space (model action does not preserve degree)")]
    NotClosed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Raise,
    Lower,
}

/// Action of the Chevalley generators `e_i`, `f_i` on a polynomial ring.
///
/// Each operator is recorded by the images of the coordinates; it acts on
/// arbitrary polynomials as the derivation extending those images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChevalleyAction {
    pub group: GroupType,
    pub raise: Vec<Vec<Polynomial>>,
    pub lower: Vec<Vec<Polynomial>>,
    pub coordinate_weights: Vec<Weight>,
}

impl ChevalleyAction {
    pub fn rank(&self) -> usize {
        self.group.rank()
    }

    pub fn nvars(&self) -> usize {
        self.coordinate_weights.len()
    }

    pub fn images(&self, direction: Direction, index: usize) -> Result<&[Polynomial], LieError> {
        let table = match direction {
            Direction::Raise => &self.raise,
            Direction::Lower => &self.lower,
        };
        table
            .get(index)
            .map(Vec::as_slice)
            .ok_or(LieError::IndexOutOfRange {
                index,
                rank: table.len(),
            })
    }

    pub fn apply_derivation(
        &self,
        direction: Direction,
        index: usize,
        p: &Polynomial,
    ) -> Result<Polynomial, LieError> {
        let images = self.images(direction, index)?;
        Ok(derivation(images, p))
    }

    pub fn weight_of_monomial(&self, exponent: &[u32]) -> Weight {
        let mut w = Weight::zero(self.rank());
        for (k, cw) in exponent.iter().zip(&self.coordinate_weights) {
            w = &w + &cw.scaled(i64::from(*k));
        }
        w
    }

    /// Weight of a polynomial all of whose terms share one weight.
    pub fn homogeneous_weight(&self, p: &Polynomial) -> Option<Weight> {
        let mut weights = p.terms().map(|(e, _)| self.weight_of_monomial(e));
        let first = weights.next()?;
        weights.all(|w| w == first).then_some(first)
    }
}

/// Applies the derivation defined by coordinate images, via the Leibniz rule.
pub fn derivation(images: &[Polynomial], p: &Polynomial) -> Polynomial {
    let n = p.nvars();
    let mut out = Polynomial::zero(n);
    for (e, c) in p.terms() {
        for (j, &k) in e.iter().enumerate() {
            if k == 0 || images[j].is_zero() {
                continue;
            }
            let mut lowered: Exponent = e.clone();
            lowered[j] -= 1;
            let coeff = c * crate::exactalg::Rational::from_integer(k.into());
            let factor = Polynomial::monomial(n, lowered, coeff);
            out = &out + &(&factor * &images[j]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::load_model;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn lowering_on_p1_is_leibniz() {
        let m = load_model("p1_sl2").unwrap();
        let x = names(&["x0", "x1"]);
        let s = Polynomial::parse("x0^2", &x).unwrap();
        let out = m.action.apply_derivation(Direction::Lower, 0, &s).unwrap();
        assert_eq!(out, Polynomial::parse("2*x0*x1", &x).unwrap());
        let hw = Polynomial::parse("x0", &x).unwrap();
        assert!(m.action.apply_derivation(Direction::Raise, 0, &hw).unwrap().is_zero());
        assert!(matches!(
            m.action.apply_derivation(Direction::Raise, 1, &hw),
            Err(LieError::IndexOutOfRange { index: 1, rank: 1 })
        ));
    }

    #[test]
    fn determinant_is_invariant() {
        let m = load_model("pgl2_wonderful").unwrap();
        let det = Polynomial::parse("a*d - b*c", &m.coordinates).unwrap();
        for dir in [Direction::Raise, Direction::Lower] {
            for i in 0..2 {
                assert!(m.action.apply_derivation(dir, i, &det).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn monomial_weights() {
        let m = load_model("p1_sl2").unwrap();
        assert_eq!(m.action.weight_of_monomial(&[5, 0]), Weight(vec![5]));
        assert_eq!(m.action.weight_of_monomial(&[0, 0]), Weight(vec![0]));
        assert_eq!(m.action.weight_of_monomial(&[1, 1]), Weight(vec![0]));
        let q = load_model("pgl2_wonderful").unwrap();
        assert_eq!(q.action.weight_of_monomial(&[1, 0, 0, 1]), Weight(vec![0, 0]));
        assert_eq!(q.action.weight_of_monomial(&[0, 1, 1, 0]), Weight(vec![0, 0]));
    }
}
