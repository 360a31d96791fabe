use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::exactalg::{primitive_integer_vector, Rational, RationalMatrix};

pub type IntVec = Vec<BigInt>;

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn primitive(v: IntVec) -> IntVec {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g == BigInt::from(1) {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

/// `a*x + b*y`, made primitive.
fn combine(a: &BigInt, x: &[BigInt], b: &BigInt, y: &[BigInt]) -> IntVec {
    primitive(x.iter().zip(y).map(|(p, q)| a * p + b * q).collect())
}

pub fn to_rationals(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Integer basis of `{x : e.x = 0 for all e}`.
pub fn integer_kernel(dim: usize, equations: &[IntVec]) -> Vec<IntVec> {
    let rows: Vec<Vec<Rational>> = equations.iter().map(|e| to_rationals(e)).collect();
    RationalMatrix::from_rows(dim, &rows)
        .kernel()
        .iter()
        .map(|v| primitive_integer_vector(v))
        .collect()
}

/// Generators of a cone in minimal form: a basis of the lineality space and
/// one primitive vector per extreme ray of the pointed quotient.
#[derive(Debug, Clone)]
pub struct Generators {
    pub lineality: Vec<IntVec>,
    pub rays: Vec<IntVec>,
}

/// Double description: adds the inequalities one at a time to the
/// subspace cut out by the equations.
///
/// While the current cone has lineality transverse to the new inequality, a
/// lineality vector is turned into a ray. Otherwise rays on both sides are
/// combined when adjacent, which is decided combinatorially: two extreme rays
/// are adjacent iff no third ray is tight on every inequality tight on both.
pub fn double_description(dim: usize, inequalities: &[IntVec], equations: &[IntVec]) -> Generators {
    let count = inequalities.len();
    let mut lineality = integer_kernel(dim, equations);
    let mut rays: Vec<(IntVec, FixedBitSet)> = Vec::new();

    for (k, a) in inequalities.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut al0 = dot(a, &l0);
            if al0.is_negative() {
                l0 = l0.into_iter().map(|x| -x).collect();
                al0 = -al0;
            }
            for l in lineality.iter_mut() {
                let al = dot(a, l);
                if !al.is_zero() {
                    *l = combine(&al0, l, &-al, &l0);
                }
            }
            for (r, tight) in rays.iter_mut() {
                let ar = dot(a, r);
                if !ar.is_zero() {
                    *r = combine(&al0, r, &-ar, &l0);
                }
                tight.insert(k);
            }
            let mut tight = FixedBitSet::with_capacity(count);
            tight.insert_range(..k);
            rays.push((l0, tight));
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|(r, _)| dot(a, r)).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (i, (_, tight)) in rays.iter_mut().enumerate() {
                if values[i].is_zero() {
                    tight.insert(k);
                }
            }
            continue;
        }
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();

        let mut created = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = &rays[p].1 & &rays[n].1;
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(i, (_, t))| i != p && i != n && common.is_subset(t));
                if blocked {
                    continue;
                }
                let v = combine(&values[p], &rays[n].0, &-&values[n], &rays[p].0);
                let mut tight = common;
                tight.insert(k);
                created.push((v, tight));
            }
        }

        let mut next = Vec::with_capacity(rays.len() + created.len());
        for (i, (r, mut tight)) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                tight.insert(k);
            }
            next.push((r, tight));
        }
        next.extend(created);
        rays = next;
    }

    Generators {
        lineality,
        rays: rays.into_iter().map(|(r, _)| r).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(v: &[i64]) -> IntVec {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn sorted(mut v: Vec<IntVec>) -> Vec<IntVec> {
        v.sort();
        v
    }

    #[test]
    fn orthant() {
        let g = double_description(2, &[iv(&[1, 0]), iv(&[0, 1])], &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![iv(&[0, 1]), iv(&[1, 0])]);
    }

    #[test]
    fn halfplane_keeps_lineality() {
        let g = double_description(2, &[iv(&[0, 1])], &[]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.rays, vec![iv(&[0, 1])]);
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // x3 >= |x1|, x3 >= |x2|
        let ineqs = [iv(&[1, 0, 1]), iv(&[-1, 0, 1]), iv(&[0, 1, 1]), iv(&[0, -1, 1])];
        let g = double_description(3, &ineqs, &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(
            sorted(g.rays),
            vec![iv(&[-1, -1, 1]), iv(&[-1, 1, 1]), iv(&[1, -1, 1]), iv(&[1, 1, 1])]
        );
    }

    #[test]
    fn equations_restrict_the_space() {
        let g = double_description(3, &[iv(&[1, 0, 0]), iv(&[0, 1, 0])], &[iv(&[1, 1, -1])]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![iv(&[0, 1, 1]), iv(&[1, 0, 1])]);
    }

    #[test]
    fn infeasible_direction_gives_zero_cone() {
        let g = double_description(1, &[iv(&[1]), iv(&[-1])], &[]);
        assert!(g.lineality.is_empty() && g.rays.is_empty());
    }
}
