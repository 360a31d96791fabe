use std::collections::{BTreeMap, HashSet};

use crate::exactalg::{Exponent, Polynomial, RationalMatrix};
use crate::models::{divisor_grid, DivisorClass, VarietyModel};

use super::{derivation, ChevalleyAction, LieError, Weight};

/// The irreducible submodule `V(λ)` of a section space, with an explicit basis
/// of weight vectors. The highest-weight vector is the first basis member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicPiece {
    pub highest_weight: Weight,
    pub basis: Vec<Polynomial>,
    pub highest_weight_vector: Polynomial,
}

impl IsotypicPiece {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// Incremental Gaussian elimination on polynomials, keyed by leading monomial.
#[derive(Default)]
struct SpanBuilder {
    rows: BTreeMap<Exponent, Polynomial>,
}

impl SpanBuilder {
    fn reduce(&self, p: &Polynomial) -> Polynomial {
        let mut w = p.clone();
        while let Some((e, c)) = w.leading_term() {
            let Some(row) = self.rows.get(e) else { break };
            let factor = c / row.leading_term().expect("nonzero row").1;
            w = &w - &row.scale(&factor);
        }
        w
    }

    /// Adds `p` if it is independent of the current span.
    fn insert(&mut self, p: &Polynomial) -> bool {
        let w = self.reduce(p);
        match w.leading_term() {
            None => false,
            Some((e, _)) => {
                let e = e.clone();
                self.rows.insert(e, w);
                true
            }
        }
    }
}

/// Decomposes the span of `monomials` (assumed stable under the action) into
/// highest-weight modules.
///
/// In each dominant weight space the joint kernel of the raising operators
/// gives the highest-weight vectors; each module is then generated by
/// repeated lowering.
pub fn decompose_monomials(
    action: &ChevalleyAction,
    monomials: &[Exponent],
) -> Result<Vec<IsotypicPiece>, LieError> {
    if monomials.is_empty() {
        return Ok(Vec::new());
    }
    let nvars = action.nvars();
    let mut by_weight: BTreeMap<Weight, Vec<Exponent>> = BTreeMap::new();
    for m in monomials {
        by_weight
            .entry(action.weight_of_monomial(m))
            .or_default()
            .push(m.clone());
    }

    let mut pieces = Vec::new();
    for (weight, space) in by_weight.iter().filter(|(w, _)| w.is_dominant()) {
        let mut rows: Vec<Vec<crate::exactalg::Rational>> = Vec::new();
        for i in 0..action.rank() {
            let target_weight = &weight.clone() + &action.group.simple_root(i);
            let target: &[Exponent] = by_weight
                .get(&target_weight)
                .map(Vec::as_slice)
                .unwrap_or(&[]);
            let images: Vec<Vec<crate::exactalg::Rational>> = space
                .iter()
                .map(|m| {
                    let p = Polynomial::monomial(nvars, m.clone(), num_traits::One::one());
                    derivation(&action.raise[i], &p)
                        .coordinates(target)
                        .ok_or(LieError::NotClosed)
                })
                .collect::<Result<_, _>>()?;
            for r in 0..target.len() {
                rows.push(images.iter().map(|col| col[r].clone()).collect());
            }
        }
        let kernel = RationalMatrix::from_rows(space.len(), &rows).kernel();
        match kernel.len() {
            0 => continue,
            1 => {}
            count => {
                return Err(LieError::MultiplicityViolation {
                    weight: weight.clone(),
                    count,
                })
            }
        }
        let hw = Polynomial::from_coordinates(nvars, space, &kernel[0]).monic();
        let basis = generate_module(action, &hw);
        let expected = action.group.weyl_dimension(weight);
        if basis.len() as u64 != expected {
            return Err(LieError::DimensionMismatch {
                weight: weight.clone(),
                expected,
                found: basis.len(),
            });
        }
        pieces.push(IsotypicPiece {
            highest_weight: weight.clone(),
            basis,
            highest_weight_vector: hw,
        });
    }

    let spanned: usize = pieces.iter().map(IsotypicPiece::dimension).sum();
    if spanned != monomials.len() {
        return Err(LieError::Incomplete {
            spanned,
            total: monomials.len(),
        });
    }
    Ok(pieces)
}

fn generate_module(action: &ChevalleyAction, hw: &Polynomial) -> Vec<Polynomial> {
    let mut span = SpanBuilder::default();
    span.insert(hw);
    let mut basis = vec![hw.clone()];
    let mut frontier = vec![hw.clone()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for f in &frontier {
            for images in &action.lower {
                let w = derivation(images, f);
                if !w.is_zero() && span.insert(&w) {
                    let w = w.monic();
                    basis.push(w.clone());
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    basis
}

/// Decomposes `H^0(X, O(D))` for a catalog model.
pub fn decompose_sections(
    model: &VarietyModel,
    divisor: &DivisorClass,
) -> Result<Vec<IsotypicPiece>, LieError> {
    decompose_monomials(&model.action, &model.section_space_basis(divisor))
}

/// Highest-weight vectors up to the degree bound that are not products of
/// previously returned ones: bounded-degree generators of the unipotent
/// invariants of the Cox ring.
///
/// By multiplicity-freeness a product of highest-weight vectors is, up to a
/// scalar, the highest-weight vector of its (class, weight), so a candidate is
/// redundant exactly when its (class, weight) lies in the monoid generated by
/// the earlier generators.
pub fn u_invariant_generators(
    model: &VarietyModel,
    degree_bound: u32,
) -> Result<Vec<(Polynomial, DivisorClass, Weight)>, LieError> {
    let mut classes = divisor_grid(model.picard_rank, degree_bound);
    classes.retain(|d| d.0.iter().any(|&x| x != 0));
    classes.sort_by_key(|d| (d.0.iter().sum::<i64>(), d.0.clone()));

    let bound = i64::from(degree_bound);
    let mut reachable: HashSet<(Vec<i64>, Weight)> = HashSet::new();
    reachable.insert((vec![0; model.picard_rank], Weight::zero(model.action.rank())));
    let mut generators = Vec::new();
    for class in classes {
        for piece in decompose_sections(model, &class)? {
            let key = (class.0.clone(), piece.highest_weight.clone());
            if reachable.contains(&key) {
                continue;
            }
            let snapshot: Vec<_> = reachable.iter().cloned().collect();
            for (d, w) in snapshot {
                let (mut d, mut w) = (d, w);
                loop {
                    d = d.iter().zip(&class.0).map(|(a, b)| a + b).collect();
                    w = &w + &piece.highest_weight;
                    if d.iter().any(|&x| x > bound) {
                        break;
                    }
                    reachable.insert((d.clone(), w.clone()));
                }
            }
            generators.push((piece.highest_weight_vector.clone(), class.clone(), piece.highest_weight));
        }
    }
    Ok(generators)
}
