//! Moment and Okounkov semigroups enumerated on a box of divisor classes,
//! and the restriction sets `J`, `K`, `J_Y`, `K_Y` with their tilde versions.
//!
//! Every enumerated point keeps the section that realizes it, so products
//! and restrictions are always computed on real sections.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{Polynomial, RationalMatrix};
use crate::liealg::{decompose_sections, LieError, Weight};
use crate::models::{divisor_grid, DivisorClass, VarietyModel};
use crate::exactalg::Rational;
use crate::polyhedra::{slice_affine, Cone, PolyhedraError, Polytope};
use crate::valuation::{nu_full, subspace_values, ValuationError, ValueVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Valuation(#[from] ValuationError),
    #[error(transparent)]
    Polyhedra(#[from] PolyhedraError),
    #[error("model {0} has no boundary divisor")]
    NoBoundary(String),
    #[error("no piece of highest weight {weight} in class {divisor}")]
    PieceNotFound { divisor: DivisorClass, weight: Weight },
    #[error("projection forgetting the weight collides: {first} and {second}")]
    Collision { first: Box<MomentPoint>, second: Box<MomentPoint> },
    #[error("V({weight})-component of the product vanishes in class {divisor}")]
    ComponentVanished { divisor: DivisorClass, weight: Weight },
    #[error("class {0} is not effective")]
    NotEffective(DivisorClass),
    #[error("restriction of the witness of {0} to Y_1 vanishes")]
    RestrictionVanished(Box<MomentPoint>),
}

/// `(nu(s), [D], lambda)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MomentPoint {
    pub value: ValueVector,
    pub divisor: DivisorClass,
    pub weight: Weight,
}

impl MomentPoint {
    pub fn coordinates(&self) -> Vec<i64> {
        let mut v = self.value.to_i64();
        v.extend(&self.divisor.0);
        v.extend(&self.weight.0);
        v
    }

    pub fn add(&self, other: &MomentPoint) -> MomentPoint {
        MomentPoint {
            value: self.value.add(&other.value),
            divisor: self.divisor.add(&other.divisor),
            weight: &self.weight + &other.weight,
        }
    }

    pub fn okounkov(&self) -> OkounkovPoint {
        OkounkovPoint {
            value: self.value.clone(),
            divisor: self.divisor.clone(),
        }
    }
}

impl fmt::Display for MomentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {}; {})", self.value, self.divisor, self.weight)
    }
}

/// `(nu(s), [D])`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OkounkovPoint {
    pub value: ValueVector,
    pub divisor: DivisorClass,
}

impl OkounkovPoint {
    pub fn coordinates(&self) -> Vec<i64> {
        let mut v = self.value.to_i64();
        v.extend(&self.divisor.0);
        v
    }
}

/// A class and highest weight, with whether restriction to `Y_1` is
/// injective on the corresponding piece.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RestrictionPair {
    pub divisor: DivisorClass,
    pub weight: Weight,
    pub injective: bool,
}

impl RestrictionPair {
    pub fn coordinates(&self) -> Vec<i64> {
        self.divisor.0.iter().chain(&self.weight.0).copied().collect()
    }
}

/// The moment semigroup truncated to classes in `[0, bound]^rho`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSemigroup {
    pub bound: u32,
    /// Sorted, duplicate-free.
    pub points: Vec<MomentPoint>,
    witnesses: BTreeMap<MomentPoint, Polynomial>,
}

impl MomentSemigroup {
    pub fn witness(&self, p: &MomentPoint) -> Option<&Polynomial> {
        self.witnesses.get(p)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points whose class lies in `[0, bound]^rho`.
    pub fn truncate(&self, bound: u32) -> MomentSemigroup {
        let keep = |p: &MomentPoint| p.divisor.0.iter().all(|&x| x <= i64::from(bound));
        MomentSemigroup {
            bound: bound.min(self.bound),
            points: self.points.iter().filter(|p| keep(p)).cloned().collect(),
            witnesses: self
                .witnesses
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, s)| (p.clone(), s.clone()))
                .collect(),
        }
    }

    pub fn okounkov_points(&self) -> Vec<OkounkovPoint> {
        let set: BTreeSet<OkounkovPoint> = self.points.iter().map(MomentPoint::okounkov).collect();
        set.into_iter().collect()
    }
}

pub fn moment_dimension(model: &VarietyModel) -> usize {
    model.dimension + model.picard_rank + model.weight_rank()
}

/// `cone` over moment points, in value + divisor + weight coordinates.
pub fn moment_cone(model: &VarietyModel, points: &[MomentPoint]) -> Result<Cone, SemigroupError> {
    let gens: Vec<Vec<i64>> = points.iter().map(MomentPoint::coordinates).collect();
    Ok(Cone::from_integer_rays(moment_dimension(model), &gens)?)
}

/// `cone` over Okounkov points, in value + divisor coordinates.
pub fn okounkov_cone(model: &VarietyModel, points: &[OkounkovPoint]) -> Result<Cone, SemigroupError> {
    let gens: Vec<Vec<i64>> = points.iter().map(OkounkovPoint::coordinates).collect();
    Ok(Cone::from_integer_rays(model.dimension + model.picard_rank, &gens)?)
}

type Realized = Vec<(MomentPoint, Polynomial)>;

fn points_of_class(model: &VarietyModel, d: &DivisorClass) -> Result<Realized, SemigroupError> {
    let mut out = Vec::new();
    for piece in decompose_sections(model, d)? {
        let adapted = subspace_values(model, d, &piece.basis)?;
        for (value, section) in adapted.values.into_iter().zip(adapted.sections) {
            let p = MomentPoint {
                value,
                divisor: d.clone(),
                weight: piece.highest_weight.clone(),
            };
            out.push((p, section));
        }
    }
    Ok(out)
}

/// All `(v, D, lambda)` with `v` a value of `V(lambda) ⊆ H^0(X, O(D))`, for
/// `D` in the box `[0, bound]^rho` (origin included).
pub fn enumerate_moment_semigroup(model: &VarietyModel, bound: u32) -> Result<MomentSemigroup, SemigroupError> {
    let per_class: Vec<Result<Realized, SemigroupError>> = divisor_grid(model.picard_rank, bound)
        .par_iter()
        .map(|d| points_of_class(model, d))
        .collect();
    let mut witnesses = BTreeMap::new();
    for chunk in per_class {
        for (p, s) in chunk? {
            witnesses.entry(p).or_insert(s);
        }
    }
    Ok(MomentSemigroup {
        bound,
        points: witnesses.keys().cloned().collect(),
        witnesses,
    })
}

/// Forgets the weight; errors when two points share value and class.
pub fn project_to_okounkov(points: &[MomentPoint]) -> Result<Vec<OkounkovPoint>, SemigroupError> {
    let mut seen: BTreeMap<OkounkovPoint, &MomentPoint> = BTreeMap::new();
    for p in points {
        if let Some(first) = seen.insert(p.okounkov(), p) {
            if first != p {
                return Err(SemigroupError::Collision {
                    first: Box::new(first.clone()),
                    second: Box::new(p.clone()),
                });
            }
        }
    }
    Ok(seen.into_keys().collect())
}

/// The restriction `V(lambda) -> H^0(Y_1, O(D|Y_1))` is zero or injective,
/// so it is decided on the highest-weight vector.
pub fn restriction_injective(
    model: &VarietyModel,
    divisor: &DivisorClass,
    weight: &Weight,
) -> Result<bool, SemigroupError> {
    let restriction = model
        .restriction
        .as_ref()
        .ok_or_else(|| SemigroupError::NoBoundary(model.name.clone()))?;
    let piece = decompose_sections(model, divisor)?
        .into_iter()
        .find(|p| p.highest_weight == *weight)
        .ok_or_else(|| SemigroupError::PieceNotFound {
            divisor: divisor.clone(),
            weight: weight.clone(),
        })?;
    let restricted = piece
        .highest_weight_vector
        .substitute(&restriction.coordinate_map)
        .map_err(ValuationError::from)?;
    Ok(!restricted.is_zero())
}

/// `J` with the cone `K` it generates, in divisor + weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSets {
    /// Every nonzero class of the box with each of its pieces.
    pub pairs: Vec<RestrictionPair>,
    pub j: Vec<RestrictionPair>,
    pub k: Cone,
}

#[allow(non_snake_case)]
pub fn build_J_K(model: &VarietyModel, bound: u32) -> Result<RestrictionSets, SemigroupError> {
    let restriction = model
        .restriction
        .as_ref()
        .ok_or_else(|| SemigroupError::NoBoundary(model.name.clone()))?;
    let mut pairs = Vec::new();
    for d in divisor_grid(model.picard_rank, bound).into_iter().filter(|d| !d.is_zero()) {
        for piece in decompose_sections(model, &d)? {
            let restricted = piece
                .highest_weight_vector
                .substitute(&restriction.coordinate_map)
                .map_err(ValuationError::from)?;
            pairs.push(RestrictionPair {
                divisor: d.clone(),
                weight: piece.highest_weight,
                injective: !restricted.is_zero(),
            });
        }
    }
    let j: Vec<RestrictionPair> = pairs.iter().filter(|p| p.injective).cloned().collect();
    let gens: Vec<Vec<i64>> = j.iter().map(RestrictionPair::coordinates).collect();
    let k = Cone::from_integer_rays(model.picard_rank + model.weight_rank(), &gens)?;
    Ok(RestrictionSets { pairs, j, k })
}

/// `phi(D, lambda) = (psi(D), lambda)` as a matrix.
pub fn phi_matrix(model: &VarietyModel) -> Result<RationalMatrix, SemigroupError> {
    let r = model
        .restriction
        .as_ref()
        .ok_or_else(|| SemigroupError::NoBoundary(model.name.clone()))?;
    Ok(r.divisor_matrix(model.picard_rank)
        .direct_sum(&RationalMatrix::identity(model.weight_rank())))
}

/// `(v_1, ..., v_n; D; lambda) -> (v_2, ..., v_n; psi(D); lambda)`.
pub fn phi_tilde_matrix(model: &VarietyModel) -> Result<RationalMatrix, SemigroupError> {
    let n = model.dimension;
    let mut drop_first = RationalMatrix::zeros(n - 1, n);
    for i in 1..n {
        drop_first.set(i - 1, i, num_traits::One::one());
    }
    Ok(drop_first.direct_sum(&phi_matrix(model)?))
}

/// `J_Y = phi(J)` and the cone `K_Y` it generates on `Y_1`.
#[allow(non_snake_case)]
pub fn build_JY_KY(
    model: &VarietyModel,
    sets: &RestrictionSets,
) -> Result<(Vec<(DivisorClass, Weight)>, Cone), SemigroupError> {
    let r = model
        .restriction
        .as_ref()
        .ok_or_else(|| SemigroupError::NoBoundary(model.name.clone()))?;
    let jy: BTreeSet<(DivisorClass, Weight)> = sets
        .j
        .iter()
        .map(|p| (r.restrict_class(&p.divisor), p.weight.clone()))
        .collect();
    let gens: Vec<Vec<i64>> = jy
        .iter()
        .map(|(d, w)| d.0.iter().chain(&w.0).copied().collect())
        .collect();
    let ky = Cone::from_integer_rays(r.target.picard_rank + model.weight_rank(), &gens)?;
    Ok((jy.into_iter().collect(), ky))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TildeSets {
    pub j_tilde: Vec<MomentPoint>,
    pub k_tilde: Cone,
    /// `phi~(J~)`, each computed by restricting the witness section and
    /// valuing it on `Y_1`.
    pub j_tilde_y: Vec<MomentPoint>,
    pub k_tilde_y: Cone,
    /// Pairs `(x, phi~(x))` for `x` in `J~`.
    pub images: Vec<(MomentPoint, MomentPoint)>,
}

pub fn build_tilde_sets(model: &VarietyModel, bound: u32) -> Result<TildeSets, SemigroupError> {
    let semigroup = enumerate_moment_semigroup(model, bound)?;
    let sets = build_J_K(model, bound)?;
    tilde_sets_from(model, &semigroup, &sets)
}

pub fn tilde_sets_from(
    model: &VarietyModel,
    semigroup: &MomentSemigroup,
    sets: &RestrictionSets,
) -> Result<TildeSets, SemigroupError> {
    let r = model
        .restriction
        .as_ref()
        .ok_or_else(|| SemigroupError::NoBoundary(model.name.clone()))?;
    let in_j: BTreeSet<(&DivisorClass, &Weight)> = sets.j.iter().map(|p| (&p.divisor, &p.weight)).collect();
    let j_tilde: Vec<MomentPoint> = semigroup
        .points
        .iter()
        .filter(|p| in_j.contains(&(&p.divisor, &p.weight)))
        .cloned()
        .collect();

    let mut images = Vec::with_capacity(j_tilde.len());
    for p in &j_tilde {
        let s = semigroup.witness(p).expect("enumerated points have witnesses");
        let restricted = s.substitute(&r.coordinate_map).map_err(ValuationError::from)?;
        if restricted.is_zero() {
            return Err(SemigroupError::RestrictionVanished(Box::new(p.clone())));
        }
        let class = r.restrict_class(&p.divisor);
        let value = nu_full(&r.target, &class, &restricted)?;
        images.push((
            p.clone(),
            MomentPoint {
                value,
                divisor: class,
                weight: p.weight.clone(),
            },
        ));
    }
    let j_tilde_y: Vec<MomentPoint> = images
        .iter()
        .map(|(_, y)| y.clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    Ok(TildeSets {
        k_tilde: moment_cone(model, &j_tilde)?,
        k_tilde_y: moment_cone(&r.target, &j_tilde_y)?,
        j_tilde,
        j_tilde_y,
        images,
    })
}

/// Multiplies the witnesses, projects the product onto `V(lambda + mu)`
/// inside `H^0(X, O(D + E))` and values the component.
pub fn semigroup_sum_witness(
    model: &VarietyModel,
    p: (&MomentPoint, &Polynomial),
    q: (&MomentPoint, &Polynomial),
) -> Result<(MomentPoint, Polynomial), SemigroupError> {
    let divisor = p.0.divisor.add(&q.0.divisor);
    let weight = &p.0.weight + &q.0.weight;
    let product = p.1 * q.1;
    let pieces = decompose_sections(model, &divisor)?;
    let target = pieces
        .iter()
        .position(|piece| piece.highest_weight == weight)
        .ok_or_else(|| SemigroupError::ComponentVanished {
            divisor: divisor.clone(),
            weight: weight.clone(),
        })?;

    let monomials = &model.section_space_basis(&divisor);
    let columns: Vec<(usize, Vec<_>)> = pieces
        .iter()
        .enumerate()
        .flat_map(|(i, piece)| {
            piece
                .basis
                .iter()
                .map(move |b| (i, b.coordinates(monomials).expect("piece lies in its section space")))
        })
        .collect();
    let rows: Vec<Vec<_>> = (0..monomials.len())
        .map(|m| columns.iter().map(|(_, c)| c[m].clone()).collect())
        .collect();
    let coords = product
        .coordinates(monomials)
        .ok_or_else(|| ValuationError::NotInSectionSpace(divisor.clone()))?;
    let coefficients = RationalMatrix::from_rows(columns.len(), &rows)
        .solve(&coords)
        .expect("pieces span the section space");

    let mut component = Polynomial::zero(model.nvars());
    let bases = pieces.iter().flat_map(|piece| piece.basis.iter());
    for ((owner, _), (c, b)) in columns.iter().zip(coefficients.iter().zip(bases)) {
        if *owner == target {
            component = &component + &b.scale(c);
        }
    }
    if component.is_zero() {
        return Err(SemigroupError::ComponentVanished { divisor, weight });
    }
    let value = nu_full(model, &divisor, &component)?;
    Ok((
        MomentPoint {
            value,
            divisor,
            weight,
        },
        component,
    ))
}

/// Slice of a cone whose coordinates `n..n + rho` are the divisor class at
/// `divisor`, projected to the coordinates `kept`.
fn slice_at_class(
    model: &VarietyModel,
    cone: &Cone,
    divisor: &DivisorClass,
    kept: std::ops::Range<usize>,
) -> Result<Polytope, SemigroupError> {
    if divisor.0.len() != model.picard_rank {
        return Err(PolyhedraError::DimensionMismatch {
            expected: model.picard_rank,
            found: divisor.0.len(),
        }
        .into());
    }
    if !model.is_effective(divisor) {
        return Err(SemigroupError::NotEffective(divisor.clone()));
    }
    let n = model.dimension;
    let constraints: Vec<(Vec<Rational>, Rational)> = divisor
        .0
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut normal = vec![Rational::from_integer(0.into()); cone.ambient_dimension()];
            normal[n + j] = Rational::from_integer(1.into());
            (normal, Rational::from_integer(x.into()))
        })
        .collect();
    let polytope = slice_affine(cone, &constraints)?;
    Ok(polytope.project(&kept.collect::<Vec<_>>()))
}

/// The Okounkov body of `divisor`: the Okounkov cone at that class, in
/// value coordinates.
pub fn okounkov_body(
    model: &VarietyModel,
    semigroup: &MomentSemigroup,
    divisor: &DivisorClass,
) -> Result<Polytope, SemigroupError> {
    let cone = okounkov_cone(model, &semigroup.okounkov_points())?;
    slice_at_class(model, &cone, divisor, 0..model.dimension)
}

/// The moment polytope of `divisor`: the moment cone at that class, in
/// weight coordinates.
pub fn moment_polytope(
    model: &VarietyModel,
    semigroup: &MomentSemigroup,
    divisor: &DivisorClass,
) -> Result<Polytope, SemigroupError> {
    let cone = moment_cone(model, &semigroup.points)?;
    let start = model.dimension + model.picard_rank;
    slice_at_class(model, &cone, divisor, start..start + model.weight_rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::load_model;

    fn pt(v: &[u32], d: &[i64], w: &[i64]) -> MomentPoint {
        MomentPoint {
            value: ValueVector(v.to_vec()),
            divisor: DivisorClass(d.to_vec()),
            weight: Weight(w.to_vec()),
        }
    }

    #[test]
    fn p1_bound_one() {
        let m = load_model("p1_sl2").unwrap();
        let s = enumerate_moment_semigroup(&m, 1).unwrap();
        assert_eq!(s.points, vec![pt(&[0], &[0], &[0]), pt(&[0], &[1], &[1]), pt(&[1], &[1], &[1])]);
    }

    #[test]
    fn pgl2_enumeration() {
        let m = load_model("pgl2_wonderful").unwrap();
        let s = enumerate_moment_semigroup(&m, 1).unwrap();
        assert_eq!(
            s.points,
            vec![
                pt(&[0, 0, 0], &[0], &[0, 0]),
                pt(&[0, 0, 0], &[1], &[1, 1]),
                pt(&[0, 0, 1], &[1], &[1, 1]),
                pt(&[0, 1, 0], &[1], &[1, 1]),
                pt(&[0, 1, 1], &[1], &[1, 1]),
            ]
        );
        let s2 = enumerate_moment_semigroup(&m, 2).unwrap();
        assert!(s2.points.contains(&pt(&[1, 0, 0], &[2], &[0, 0])));
        assert_eq!(s2.len(), 1 + 4 + 10);
        assert_eq!(s2.truncate(1), s);
    }

    #[test]
    fn projection_examples() {
        let single = vec![pt(&[1, 0, 0], &[2], &[0, 0])];
        assert_eq!(project_to_okounkov(&single).unwrap().len(), 1);
        assert!(project_to_okounkov(&[]).unwrap().is_empty());
        let m = load_model("pgl2_wonderful").unwrap();
        let s = enumerate_moment_semigroup(&m, 2).unwrap();
        assert_eq!(project_to_okounkov(&s.points).unwrap().len(), s.len());
        let clash = vec![pt(&[0], &[1], &[1]), pt(&[0], &[1], &[3])];
        assert!(matches!(project_to_okounkov(&clash), Err(SemigroupError::Collision { .. })));
    }

    #[test]
    fn restriction_examples() {
        let m = load_model("pgl2_wonderful").unwrap();
        let w = |k: i64| Weight(vec![k, k]);
        assert!(!restriction_injective(&m, &DivisorClass(vec![2]), &w(0)).unwrap());
        assert!(restriction_injective(&m, &DivisorClass(vec![1]), &w(1)).unwrap());
        assert!(!restriction_injective(&m, &DivisorClass(vec![3]), &w(1)).unwrap());
        assert!(matches!(
            restriction_injective(&m, &DivisorClass(vec![3]), &w(2)),
            Err(SemigroupError::PieceNotFound { .. })
        ));
        let p1 = load_model("p1_sl2").unwrap();
        assert!(matches!(
            restriction_injective(&p1, &DivisorClass(vec![1]), &Weight(vec![1])),
            Err(SemigroupError::NoBoundary(_))
        ));
    }

    #[test]
    fn j_and_k_on_pgl2() {
        let m = load_model("pgl2_wonderful").unwrap();
        let sets = build_J_K(&m, 4).unwrap();
        for p in &sets.j {
            assert_eq!(p.weight, Weight(vec![p.divisor.0[0], p.divisor.0[0]]));
        }
        assert_eq!(sets.j.len(), 4);
        assert_eq!(sets.k, Cone::from_integer_rays(3, &[vec![1, 1, 1]]).unwrap());

        let empty = build_J_K(&m, 0).unwrap();
        assert!(empty.j.is_empty());
        assert_eq!(empty.k, Cone::zero(3));
        assert!(matches!(
            build_J_K(&load_model("p1_sl2").unwrap(), 2),
            Err(SemigroupError::NoBoundary(_))
        ));

        let (jy, ky) = build_JY_KY(&m, &sets).unwrap();
        assert_eq!(jy[0], (DivisorClass(vec![1, 1]), Weight(vec![1, 1])));
        assert_eq!(ky, Cone::from_integer_rays(4, &[vec![1, 1, 1, 1]]).unwrap());
        let image = sets.k.linear_image(&phi_matrix(&m).unwrap()).unwrap();
        assert_eq!(image, ky);
    }

    #[test]
    fn tilde_sets_on_pgl2() {
        let m = load_model("pgl2_wonderful").unwrap();
        let t = build_tilde_sets(&m, 1).unwrap();
        assert_eq!(t.j_tilde.len(), 4);
        assert!(t.j_tilde.iter().all(|p| p.value.0[0] == 0));
        let d_point = pt(&[0, 1, 1], &[1], &[1, 1]);
        let image = t.images.iter().find(|(x, _)| *x == d_point).unwrap();
        assert_eq!(image.1, pt(&[1, 1], &[1, 1], &[1, 1]));

        let t2 = build_tilde_sets(&m, 2).unwrap();
        assert!(!t2.j_tilde.contains(&pt(&[1, 0, 0], &[2], &[0, 0])));
        let phi = phi_tilde_matrix(&m).unwrap();
        for (x, y) in &t2.images {
            let lin: Vec<i64> = phi
                .mul_vector(&crate::exactalg::integer_vector_to_rationals(&x.coordinates()))
                .iter()
                .map(|q| i64::try_from(q.to_integer()).unwrap())
                .collect();
            assert_eq!(lin, y.coordinates());
        }
    }

    #[test]
    fn bodies_of_pgl2() {
        use crate::polyhedra::polytope_volume;
        let m = load_model("pgl2_wonderful").unwrap();
        let s = enumerate_moment_semigroup(&m, 3).unwrap();
        let body = okounkov_body(&m, &s, &DivisorClass(vec![1])).unwrap();
        assert_eq!(body.vertices.len(), 5);
        assert_eq!(polytope_volume(&body), Rational::new(1.into(), 6.into()));
        let moment = moment_polytope(&m, &s, &DivisorClass(vec![1])).unwrap();
        assert_eq!(moment.vertices.len(), 2);
        assert!(matches!(
            okounkov_body(&m, &s, &DivisorClass(vec![-1])),
            Err(SemigroupError::NotEffective(_))
        ));
    }

    #[test]
    fn sum_witness_examples() {
        let m = load_model("pgl2_wonderful").unwrap();
        let a = m.parse_polynomial("a").unwrap();
        let det = m.parse_polynomial("a*d - b*c").unwrap();
        let pa = pt(&[0, 0, 0], &[1], &[1, 1]);
        let pdet = pt(&[1, 0, 0], &[2], &[0, 0]);

        let (sum, r) = semigroup_sum_witness(&m, (&pa, &a), (&pa, &a)).unwrap();
        assert_eq!(sum, pt(&[0, 0, 0], &[2], &[2, 2]));
        assert_eq!(r, m.parse_polynomial("a^2").unwrap());

        let (sum, _) = semigroup_sum_witness(&m, (&pdet, &det), (&pdet, &det)).unwrap();
        assert_eq!(sum, pt(&[2, 0, 0], &[4], &[0, 0]));

        let (sum, _) = semigroup_sum_witness(&m, (&pa, &a), (&pdet, &det)).unwrap();
        assert_eq!(sum, pt(&[1, 0, 0], &[3], &[1, 1]));
        assert_eq!(sum, pa.add(&pdet));
    }
}
