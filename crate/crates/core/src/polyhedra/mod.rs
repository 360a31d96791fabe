//! Exact rational polyhedral cones in double description, exact linear
//! programming, and slices of cones with their volumes.
//!
//! A cone is `cone(rays) + span(lineality)`, equivalently
//! `{x : f.x >= 0 for every facet f, e.x = 0 for every equation e}`. Both
//! sides are kept in canonical form so that structural equality of two
//! [`Cone`] values is equality of the sets:
//!
//! * lineality and equations are reduced row echelon bases scaled to
//!   primitive integer vectors;
//! * rays are projected onto the orthogonal complement of the lineality
//!   space, facets onto the span of the cone, both made primitive and sorted.

mod dd;
pub mod lp;
mod polytope;

pub use dd::IntVec;
pub use polytope::{polytope_volume, slice, slice_affine, Polytope, PolytopeRecord};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{primitive_integer_vector, Rational, RationalMatrix};

use dd::{dot, double_description, primitive, to_rationals};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyhedraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("target is not in the relative interior of the image cone: {0}")]
    Infeasible(Certificate),
    #[error("slice is unbounded")]
    UnboundedSlice,
    #[error("slice is empty")]
    EmptySlice,
    #[error("malformed cone record: {0}")]
    Malformed(String),
}

/// Why a target is not in the relative interior of an image cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// `normal . target != 0` for an equation of the image's span.
    OutsideSpan { normal: Vec<String> },
    /// `normal . target < 0` for a facet of the image.
    ViolatedFacet { normal: Vec<String> },
    /// `normal . target = 0` for a facet of the image.
    OnBoundary { normal: Vec<String> },
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (what, normal) = match self {
            Certificate::OutsideSpan { normal } => ("equation violated", normal),
            Certificate::ViolatedFacet { normal } => ("facet violated", normal),
            Certificate::OnBoundary { normal } => ("target on facet", normal),
        };
        write!(f, "{what}, normal ({})", normal.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<IntVec>,
    lineality: Vec<IntVec>,
    facets: Vec<IntVec>,
    equations: Vec<IntVec>,
}

fn int_vec(v: &[i64]) -> IntVec {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn check_len(dim: usize, vs: &[impl AsRef<[BigInt]>]) -> Result<(), PolyhedraError> {
    match vs.iter().find(|v| v.as_ref().len() != dim) {
        Some(v) => Err(PolyhedraError::DimensionMismatch {
            expected: dim,
            found: v.as_ref().len(),
        }),
        None => Ok(()),
    }
}

/// Reduced row echelon basis of the span, as primitive integer rows.
fn canonical_basis(dim: usize, vs: &[IntVec]) -> Vec<IntVec> {
    let rows: Vec<Vec<Rational>> = vs.iter().map(|v| to_rationals(v)).collect();
    let ech = RationalMatrix::from_rows(dim, &rows).row_echelon();
    (0..ech.rank)
        .map(|r| primitive_integer_vector(ech.matrix.row(r)))
        .collect()
}

/// Orthogonal projection of `v` onto the complement of `span(basis)`, made
/// primitive.
fn project_off(v: &[BigInt], basis: &[IntVec]) -> IntVec {
    if basis.is_empty() {
        return primitive(v.to_vec());
    }
    let k = basis.len();
    let gram: Vec<Vec<Rational>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| Rational::from_integer(dot(a, b))).collect())
        .collect();
    let rhs: Vec<Rational> = basis.iter().map(|a| Rational::from_integer(dot(a, v))).collect();
    let c = RationalMatrix::from_rows(k, &gram)
        .solve(&rhs)
        .expect("gram matrix of a basis is invertible");
    let mut out: Vec<Rational> = to_rationals(v);
    for (ci, b) in c.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o -= ci * Rational::from_integer(x.clone());
        }
    }
    primitive_integer_vector(&out)
}

fn canonical_directions(vs: Vec<IntVec>, basis: &[IntVec]) -> Vec<IntVec> {
    let mut out: Vec<IntVec> = vs
        .iter()
        .map(|v| project_off(v, basis))
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    out
}

fn negated(v: &[BigInt]) -> IntVec {
    v.iter().map(|x| -x).collect()
}

impl Cone {
    /// Builds the canonical dual pair from generators: the facets are the
    /// extreme rays of the dual cone, after which the rays are recomputed
    /// from the facets.
    fn from_generators(dim: usize, rays: Vec<IntVec>, lineality: Vec<IntVec>) -> Self {
        let mut dual_ineqs = rays;
        for l in &lineality {
            dual_ineqs.push(negated(l));
            dual_ineqs.push(l.clone());
        }
        let dual = double_description(dim, &dual_ineqs, &[]);
        Self::from_h(dim, dual.rays, dual.lineality)
    }

    fn from_h(dim: usize, facets: Vec<IntVec>, equations: Vec<IntVec>) -> Self {
        let equations = canonical_basis(dim, &equations);
        let primal = double_description(dim, &facets, &equations);
        let lineality = canonical_basis(dim, &primal.lineality);
        let rays = canonical_directions(primal.rays, &lineality);
        let facets = canonical_directions(facets, &equations);
        Cone {
            dim,
            rays,
            lineality,
            facets,
            equations,
        }
    }

    /// Cone generated by rational vectors. Zero generators are ignored; the
    /// empty list gives the zero cone.
    pub fn from_rays(dim: usize, generators: &[Vec<Rational>]) -> Result<Self, PolyhedraError> {
        let gens: Vec<IntVec> = generators.iter().map(|g| primitive_integer_vector(g)).collect();
        check_len(dim, &gens)?;
        Ok(Self::from_generators(dim, gens, Vec::new()))
    }

    pub fn from_integer_rays(dim: usize, generators: &[Vec<i64>]) -> Result<Self, PolyhedraError> {
        let gens: Vec<IntVec> = generators.iter().map(|g| int_vec(g)).collect();
        check_len(dim, &gens)?;
        Ok(Self::from_generators(dim, gens, Vec::new()))
    }

    /// `cone(rays) + span(lineality)`.
    pub fn from_rays_and_lineality(
        dim: usize,
        rays: &[IntVec],
        lineality: &[IntVec],
    ) -> Result<Self, PolyhedraError> {
        check_len(dim, rays)?;
        check_len(dim, lineality)?;
        Ok(Self::from_generators(dim, rays.to_vec(), lineality.to_vec()))
    }

    /// `{x : f.x >= 0, e.x = 0}`.
    pub fn from_inequalities(
        dim: usize,
        inequalities: &[IntVec],
        equations: &[IntVec],
    ) -> Result<Self, PolyhedraError> {
        check_len(dim, inequalities)?;
        check_len(dim, equations)?;
        let g = double_description(dim, inequalities, equations);
        Ok(Self::from_generators(dim, g.rays, g.lineality))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, Vec::new(), Vec::new())
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect();
        Self::from_generators(dim, Vec::new(), basis)
    }

    pub fn nonnegative_orthant(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| BigInt::from(i64::from(i == j))).collect())
            .collect();
        Self::from_generators(dim, basis, Vec::new())
    }

    pub fn ambient_dimension(&self) -> usize {
        self.dim
    }

    /// Dimension of the linear span.
    pub fn dimension(&self) -> usize {
        self.dim - self.equations.len()
    }

    pub fn rays(&self) -> &[IntVec] {
        &self.rays
    }

    pub fn lineality(&self) -> &[IntVec] {
        &self.lineality
    }

    pub fn facets(&self) -> &[IntVec] {
        &self.facets
    }

    pub fn equations(&self) -> &[IntVec] {
        &self.equations
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains_integer(&self, v: &[BigInt]) -> bool {
        v.len() == self.dim
            && self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|f| !dot(f, v).is_negative())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.dim && self.contains_integer(&primitive_integer_vector(v))
    }

    /// Strict inequality on every facet; a linear subspace is its own
    /// relative interior.
    pub fn relative_interior_contains(&self, v: &[Rational]) -> bool {
        if !self.contains(v) {
            return false;
        }
        let p = primitive_integer_vector(v);
        self.facets.iter().all(|f| dot(f, &p).is_positive())
    }

    fn generators_within(&self, other: &Cone) -> bool {
        self.rays.iter().all(|r| other.contains_integer(r))
            && self
                .lineality
                .iter()
                .all(|l| other.contains_integer(l) && other.contains_integer(&negated(l)))
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.dim == other.dim && self.generators_within(other)
    }

    /// Mutual containment of generators.
    pub fn set_equal(&self, other: &Cone) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone, PolyhedraError> {
        if self.dim != other.dim {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        let ineqs: Vec<IntVec> = self.facets.iter().chain(&other.facets).cloned().collect();
        let eqs: Vec<IntVec> = self.equations.iter().chain(&other.equations).cloned().collect();
        Cone::from_inequalities(self.dim, &ineqs, &eqs)
    }

    /// `m(C)` for a matrix with `dim` columns.
    pub fn linear_image(&self, m: &RationalMatrix) -> Result<Cone, PolyhedraError> {
        if m.cols() != self.dim {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.dim,
                found: m.cols(),
            });
        }
        let apply = |v: &IntVec| primitive_integer_vector(&m.mul_vector(&to_rationals(v)));
        let rays = self.rays.iter().map(apply).collect();
        let lineality = self.lineality.iter().map(apply).collect();
        Ok(Cone::from_generators(m.rows(), rays, lineality))
    }

    /// `{x : m x in C}` for a matrix with `dim` rows.
    pub fn linear_preimage(&self, m: &RationalMatrix) -> Result<Cone, PolyhedraError> {
        if m.rows() != self.dim {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.dim,
                found: m.rows(),
            });
        }
        let pull = |v: &IntVec| primitive_integer_vector(&m.vector_mul(&to_rationals(v)));
        let ineqs: Vec<IntVec> = self.facets.iter().map(pull).collect();
        let eqs: Vec<IntVec> = self.equations.iter().map(pull).collect();
        Cone::from_inequalities(m.cols(), &ineqs, &eqs)
    }

    /// `C1 x C2` in the direct sum of the ambient spaces.
    pub fn product(&self, other: &Cone) -> Cone {
        let left = |v: &IntVec| -> IntVec {
            v.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), other.dim)).collect()
        };
        let right = |v: &IntVec| -> IntVec {
            std::iter::repeat_n(BigInt::zero(), self.dim).chain(v.iter().cloned()).collect()
        };
        let rays = self.rays.iter().map(left).chain(other.rays.iter().map(right)).collect();
        let lineality = self
            .lineality
            .iter()
            .map(left)
            .chain(other.lineality.iter().map(right))
            .collect();
        Cone::from_generators(self.dim + other.dim, rays, lineality)
    }

    /// A point `sum xi_i r_i + l` with every ray coefficient `xi_i > 0` and
    /// `projection(point) = target`.
    ///
    /// The coefficients maximize the smallest `xi_i` (capped at 1); among
    /// those, the total coefficient mass is minimized.
    pub fn relative_interior_point(
        &self,
        projection: &RationalMatrix,
        target: &[Rational],
    ) -> Result<InteriorPoint, PolyhedraError> {
        if projection.cols() != self.dim || projection.rows() != target.len() {
            return Err(PolyhedraError::DimensionMismatch {
                expected: self.dim,
                found: projection.cols(),
            });
        }
        match lp::interior_coefficients(self, projection, target) {
            Some(p) => Ok(p),
            None => Err(PolyhedraError::Infeasible(self.certificate(projection, target)?)),
        }
    }

    fn certificate(&self, projection: &RationalMatrix, target: &[Rational]) -> Result<Certificate, PolyhedraError> {
        let image = self.linear_image(projection)?;
        let t: Vec<Rational> = target.to_vec();
        let value = |n: &IntVec| -> Rational {
            n.iter().zip(&t).map(|(a, b)| Rational::from_integer(a.clone()) * b).sum()
        };
        let strings = |n: &IntVec| n.iter().map(BigInt::to_string).collect();
        if let Some(e) = image.equations.iter().find(|e| !value(e).is_zero()) {
            return Ok(Certificate::OutsideSpan { normal: strings(e) });
        }
        if let Some(f) = image.facets.iter().find(|f| value(f).is_negative()) {
            return Ok(Certificate::ViolatedFacet { normal: strings(f) });
        }
        match image.facets.iter().find(|f| value(f).is_zero()) {
            Some(f) => Ok(Certificate::OnBoundary { normal: strings(f) }),
            None => Err(PolyhedraError::Malformed(
                "linear program infeasible for a relative-interior target".into(),
            )),
        }
    }

    pub fn to_record(&self) -> ConeRecord {
        let strings = |vs: &[IntVec]| -> Vec<Vec<String>> {
            vs.iter().map(|v| v.iter().map(BigInt::to_string).collect()).collect()
        };
        ConeRecord {
            ambient_dimension: self.dim,
            rays: strings(&self.rays),
            lineality: strings(&self.lineality),
            facets: strings(&self.facets),
            equations: strings(&self.equations),
        }
    }

    /// Rebuilds a cone from its record and checks the record was canonical.
    pub fn from_record(record: &ConeRecord) -> Result<Cone, PolyhedraError> {
        let parse = |vs: &[Vec<String>]| -> Result<Vec<IntVec>, PolyhedraError> {
            vs.iter()
                .map(|v| {
                    v.iter()
                        .map(|s| s.parse::<BigInt>().map_err(|e| PolyhedraError::Malformed(e.to_string())))
                        .collect()
                })
                .collect()
        };
        let rays = parse(&record.rays)?;
        let lineality = parse(&record.lineality)?;
        let cone = Cone::from_rays_and_lineality(record.ambient_dimension, &rays, &lineality)?;
        if cone.to_record() != *record {
            return Err(PolyhedraError::Malformed("record is not in canonical form".into()));
        }
        Ok(cone)
    }
}

/// Serialized form: integers as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeRecord {
    pub ambient_dimension: usize,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
    pub facets: Vec<Vec<String>>,
    pub equations: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InteriorPoint {
    pub point: Vec<Rational>,
    /// One strictly positive coefficient per ray, in ray order.
    pub ray_coefficients: Vec<Rational>,
    pub lineality_coefficients: Vec<Rational>,
}

/// Coordinate projection onto `coords` as a matrix.
pub fn coordinate_projection(dim: usize, coords: &[usize]) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(coords.len(), dim);
    for (r, &c) in coords.iter().enumerate() {
        m.set(r, c, Rational::from_integer(1.into()));
    }
    m
}
