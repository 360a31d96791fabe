use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactalg::{primitive_integer_vector, rational_to_string, Rational, RationalMatrix};

use super::dd::{dot, double_description, IntVec};
use super::{Cone, PolyhedraError};

/// Bounded slice `{x in C : H x = l}`, given by its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    pub ambient: usize,
    /// Extreme points, sorted.
    pub vertices: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeRecord {
    pub ambient_dimension: usize,
    pub dimension: usize,
    pub vertices: Vec<Vec<String>>,
    pub volume: String,
}

pub fn slice(cone: &Cone, normal: &[Rational], level: &Rational) -> Result<Polytope, PolyhedraError> {
    slice_affine(cone, &[(normal.to_vec(), level.clone())])
}

/// Slice by several affine equations at once, computed through the
/// homogenization `{(x, t) : x in C, t >= 0, H x = t l}`: the slice is
/// bounded iff every generator of that cone has `t > 0`.
pub fn slice_affine(cone: &Cone, constraints: &[(Vec<Rational>, Rational)]) -> Result<Polytope, PolyhedraError> {
    let d = cone.ambient_dimension();
    let lift = |v: &IntVec| -> IntVec { v.iter().cloned().chain([BigInt::zero()]).collect() };
    let mut ineqs: Vec<IntVec> = cone.facets().iter().map(lift).collect();
    let mut t_axis = vec![BigInt::zero(); d + 1];
    t_axis[d] = BigInt::one();
    ineqs.push(t_axis);
    let mut eqs: Vec<IntVec> = cone.equations().iter().map(lift).collect();
    for (normal, level) in constraints {
        if normal.len() != d {
            return Err(PolyhedraError::DimensionMismatch {
                expected: d,
                found: normal.len(),
            });
        }
        let row: Vec<Rational> = normal.iter().cloned().chain([-level.clone()]).collect();
        eqs.push(primitive_integer_vector(&row));
    }
    let g = double_description(d + 1, &ineqs, &eqs);
    if !g.rays.iter().any(|r| r[d].is_positive()) {
        return Err(PolyhedraError::EmptySlice);
    }
    if !g.lineality.is_empty() || g.rays.iter().any(|r| r[d].is_zero()) {
        return Err(PolyhedraError::UnboundedSlice);
    }
    let mut vertices: Vec<Vec<Rational>> = g.rays.iter().map(|r| dehomogenize(r)).collect();
    vertices.sort();
    vertices.dedup();
    Ok(Polytope { ambient: d, vertices })
}

fn homogenized(points: &[Vec<Rational>]) -> Vec<IntVec> {
    points
        .iter()
        .map(|p| {
            let v: Vec<Rational> = p.iter().cloned().chain([Rational::one()]).collect();
            primitive_integer_vector(&v)
        })
        .collect()
}

fn differences(points: &[Vec<Rational>]) -> RationalMatrix {
    let rows: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    RationalMatrix::from_rows(points[0].len(), &rows)
}

impl Polytope {
    /// Dimension of the affine hull of the vertices.
    pub fn dimension(&self) -> usize {
        if self.vertices.len() <= 1 {
            return 0;
        }
        differences(&self.vertices).rank()
    }

    /// Convex hull of the images under a coordinate projection.
    pub fn project(&self, coords: &[usize]) -> Polytope {
        let points: Vec<Vec<Rational>> = self
            .vertices
            .iter()
            .map(|v| coords.iter().map(|&c| v[c].clone()).collect())
            .collect();
        Polytope {
            ambient: coords.len(),
            vertices: hull_vertices(&points),
        }
    }

    pub fn to_record(&self) -> PolytopeRecord {
        PolytopeRecord {
            ambient_dimension: self.ambient,
            dimension: self.dimension(),
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().map(rational_to_string).collect())
                .collect(),
            volume: rational_to_string(&polytope_volume(self)),
        }
    }
}

fn dehomogenize(r: &[BigInt]) -> Vec<Rational> {
    let d = r.len() - 1;
    let t = Rational::from_integer(r[d].clone());
    r[..d].iter().map(|x| Rational::from_integer(x.clone()) / &t).collect()
}

fn hull_vertices(points: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let dim = points.first().map_or(0, Vec::len);
    let hull = Cone::from_rays_and_lineality(dim + 1, &homogenized(points), &[])
        .expect("homogenized points share a dimension");
    let mut out: Vec<Vec<Rational>> = hull.rays().iter().map(|r| dehomogenize(r)).collect();
    out.sort();
    out
}

/// Pulling triangulation from the first vertex: cone over the
/// triangulations of the facets not containing it.
fn triangulate(points: &[Vec<Rational>], idx: &[usize]) -> Vec<Vec<usize>> {
    let subset: Vec<Vec<Rational>> = idx.iter().map(|&i| points[i].clone()).collect();
    let lifted = homogenized(&subset);
    let dim = points[0].len();
    let hull = Cone::from_rays_and_lineality(dim + 1, &lifted, &[]).expect("consistent dimension");
    if hull.dimension() <= 1 {
        return vec![vec![idx[0]]];
    }
    let mut out = Vec::new();
    for f in hull.facets() {
        let face: Vec<usize> = idx
            .iter()
            .zip(&lifted)
            .filter(|(_, v)| dot(f, v).is_zero())
            .map(|(&i, _)| i)
            .collect();
        if face.contains(&idx[0]) {
            continue;
        }
        for simplex in triangulate(points, &face) {
            let mut s = vec![idx[0]];
            s.extend(simplex);
            out.push(s);
        }
    }
    out
}

/// Volume in the polytope's own dimension `k`, measured after projecting
/// onto the first `k` coordinates that are independent on the affine hull.
/// For slices fixing some coordinates this is the lattice-normalized volume
/// in the remaining ones. A single point has volume 1.
pub fn polytope_volume(p: &Polytope) -> Rational {
    let k = p.dimension();
    if k == 0 {
        return Rational::one();
    }
    let pivots = differences(&p.vertices).row_echelon().pivots;
    let projected: Vec<Vec<Rational>> = p
        .vertices
        .iter()
        .map(|v| pivots.iter().map(|&c| v[c].clone()).collect())
        .collect();
    let all: Vec<usize> = (0..projected.len()).collect();
    let factorial: BigInt = (1..=k).map(BigInt::from).product();
    let mut total = Rational::zero();
    for simplex in triangulate(&projected, &all) {
        let pts: Vec<Vec<Rational>> = simplex.iter().map(|&i| projected[i].clone()).collect();
        total += differences(&pts).determinant().abs();
    }
    total / Rational::from_integer(factorial)
}
