//! Exact two-phase simplex method with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::exactalg::{Rational, RationalMatrix};

use super::dd::to_rationals;
use super::{Cone, InteriorPoint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { x: Vec<Rational>, value: Rational },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rational::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.rows[i].len() {
                let v = &f * &self.rows[r][j];
                self.rows[i][j] -= v;
            }
            let v = &f * &self.rhs[r];
            self.rhs[i] -= v;
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost . x` over the columns in `allowed`. Bland's rule: the
    /// entering column is the smallest improving index, ties in the ratio test
    /// go to the smallest basic index. Returns false when unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: usize) -> bool {
        loop {
            let reduced = |j: usize| -> Rational {
                let mut z = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    z -= &cost[b] * &self.rows[i][j];
                }
                z
            };
            let Some(enter) = (0..allowed).find(|&j| !self.basis.contains(&j) && reduced(j).is_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((l, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*l]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return false,
            }
        }
    }

    fn solution(&self, n: usize) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.rhs[i].clone();
            }
        }
        x
    }
}

/// Maximizes `c . x` subject to `a x = b`, `x >= 0`.
pub fn maximize(c: &[Rational], a: &RationalMatrix, b: &[Rational]) -> LpOutcome {
    let (m, n) = (a.rows(), a.cols());
    assert_eq!(c.len(), n);
    assert_eq!(b.len(), m);
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, bi) in b.iter().enumerate() {
        let flip = bi.is_negative();
        let mut row: Vec<Rational> = a.row(i).iter().map(|x| if flip { -x } else { x.clone() }).collect();
        row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(if flip { -bi } else { bi.clone() });
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n..n + m).collect(),
    };

    let phase_one: Vec<Rational> = (0..n + m)
        .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
        .collect();
    t.optimize(&phase_one, n + m);
    if t.rhs.iter().zip(&t.basis).any(|(v, &bi)| bi >= n && !v.is_zero()) {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis; rows where that is
    // impossible are redundant
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| Rational::zero()));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let x = t.solution(n);
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    LpOutcome::Optimal { x, value }
}

/// Variables: `xi` (one per ray), `l+`, `l-` (per lineality vector), `s`,
/// then slacks. Constraints: `P(R xi + L(l+ - l-)) = t`, `xi_i - s >= 0`,
/// `s <= 1`. Stage one maximizes `s`; stage two fixes `s` and minimizes the
/// coefficient mass.
pub(super) fn interior_coefficients(
    cone: &Cone,
    projection: &RationalMatrix,
    target: &[Rational],
) -> Option<InteriorPoint> {
    let rays: Vec<Vec<Rational>> = cone.rays().iter().map(|r| to_rationals(r)).collect();
    let lin: Vec<Vec<Rational>> = cone.lineality().iter().map(|l| to_rationals(l)).collect();
    let (nr, nl, k) = (rays.len(), lin.len(), target.len());
    let images_r: Vec<Vec<Rational>> = rays.iter().map(|r| projection.mul_vector(r)).collect();
    let images_l: Vec<Vec<Rational>> = lin.iter().map(|l| projection.mul_vector(l)).collect();

    let s_col = nr + 2 * nl;
    let n = s_col + 1 + nr + 1;
    let mut a = RationalMatrix::zeros(k + nr + 1, n);
    let mut b = vec![Rational::zero(); k + nr + 1];
    let one = Rational::one();
    for row in 0..k {
        for (i, img) in images_r.iter().enumerate() {
            a.set(row, i, img[row].clone());
        }
        for (j, img) in images_l.iter().enumerate() {
            a.set(row, nr + j, img[row].clone());
            a.set(row, nr + nl + j, -&img[row]);
        }
        b[row] = target[row].clone();
    }
    for i in 0..nr {
        a.set(k + i, i, one.clone());
        a.set(k + i, s_col, -&one);
        a.set(k + i, s_col + 1 + i, -&one);
    }
    a.set(k + nr, s_col, one.clone());
    a.set(k + nr, n - 1, one.clone());
    b[k + nr] = one.clone();

    let mut c = vec![Rational::zero(); n];
    c[s_col] = one.clone();
    let best = match maximize(&c, &a, &b) {
        LpOutcome::Optimal { value, .. } if value.is_positive() => value,
        _ => return None,
    };

    // fix s = best, drop the cap row, minimize the mass
    let mut a2 = RationalMatrix::zeros(k + nr + 1, n);
    for r in 0..k + nr {
        for j in 0..n {
            a2.set(r, j, a.get(r, j).clone());
        }
    }
    a2.set(k + nr, s_col, one.clone());
    let mut b2 = b.clone();
    b2[k + nr] = best;
    let mut c2 = vec![Rational::zero(); n];
    for x in c2.iter_mut().take(nr + 2 * nl) {
        *x = -&one;
    }
    let LpOutcome::Optimal { x, .. } = maximize(&c2, &a2, &b2) else {
        return None;
    };

    let xi: Vec<Rational> = x[..nr].to_vec();
    let lam: Vec<Rational> = (0..nl).map(|j| &x[nr + j] - &x[nr + nl + j]).collect();
    let mut point = vec![Rational::zero(); cone.ambient_dimension()];
    for (coef, r) in xi.iter().zip(&rays).chain(lam.iter().zip(&lin)) {
        for (p, v) in point.iter_mut().zip(r) {
            *p += coef * v;
        }
    }
    Some(InteriorPoint {
        point,
        ray_coefficients: xi,
        lineality_coefficients: lam,
    })
}
