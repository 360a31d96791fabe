use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{Polynomial, Rational};
use crate::liealg::decompose_sections;
use crate::models::{divisor_grid, VarietyModel};
use crate::semigroup::{
    enumerate_moment_semigroup, moment_cone, project_to_okounkov, semigroup_sum_witness, MomentPoint, MomentSemigroup,
};
use crate::valuation::{nu_prime, ValueVector};

use super::Report;

pub const COMBINATIONS_PER_PIECE: usize = 20;

fn random_combination(rng: &mut ChaCha8Rng, basis: &[Polynomial]) -> Polynomial {
    loop {
        let mut s = Polynomial::zero(basis[0].nvars());
        for b in basis {
            let c: i64 = rng.gen_range(-9..=9);
            s = &s + &b.scale(&Rational::from_integer(c.into()));
        }
        if !s.is_zero() {
            return s;
        }
    }
}

/// `nu'` is constant on each piece (basis and random combinations) and
/// distinct across the pieces of one section space.
pub fn check_sepvalues(model: &VarietyModel, bound: u32, seed: u64) -> Report {
    let mut report = Report::new("sepvalues", &model.name, bound, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for d in divisor_grid(model.picard_rank, bound) {
        let pieces = match decompose_sections(model, &d) {
            Ok(p) => p,
            Err(e) => {
                report.fail(format!("decompose{d}"), e.to_string());
                continue;
            }
        };
        let mut piece_values: Vec<(String, ValueVector)> = Vec::new();
        for piece in &pieces {
            let label = format!("constant{d} V{}", piece.highest_weight);
            let mut samples: Vec<Polynomial> = piece.basis.clone();
            samples.extend((0..COMBINATIONS_PER_PIECE).map(|_| random_combination(&mut rng, &piece.basis)));
            let values: Result<Vec<ValueVector>, _> =
                samples.iter().map(|s| nu_prime(model, &d, s).map(|v| v.prefix)).collect();
            match values {
                Ok(values) => {
                    let first = values[0].clone();
                    match values.iter().position(|v| *v != first) {
                        None => {
                            report.pass(&label, format!("nu' = {first} on {} sections", values.len()));
                            piece_values.push((piece.highest_weight.to_string(), first));
                        }
                        Some(i) => report.fail(
                            &label,
                            format!("nu' = {first} but {} on {}", values[i], model.display(&samples[i])),
                        ),
                    }
                }
                Err(e) => report.fail(&label, e.to_string()),
            }
        }
        for (i, (wi, vi)) in piece_values.iter().enumerate() {
            for (wj, vj) in &piece_values[i + 1..] {
                report.push(
                    format!("distinct{d} V{wi} V{wj}"),
                    vi != vj,
                    format!("nu' = {vi} vs {vj}"),
                );
            }
        }
    }
    report
}

/// Minimal enumerated point on each extreme ray of the moment cone.
pub fn extreme_points(model: &VarietyModel, semigroup: &MomentSemigroup) -> Vec<MomentPoint> {
    let Ok(cone) = moment_cone(model, &semigroup.points) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for ray in cone.rays() {
        let multiple = |p: &MomentPoint| -> Option<BigInt> {
            let c: Vec<BigInt> = p.coordinates().into_iter().map(BigInt::from).collect();
            let i = ray.iter().position(|x| !x.is_zero())?;
            let k = &c[i] / &ray[i];
            (k.is_positive() && c.iter().zip(ray).all(|(a, r)| *a == &k * r)).then_some(k)
        };
        if let Some((_, p)) = semigroup
            .points
            .iter()
            .filter_map(|p| multiple(p).map(|k| (k, p)))
            .min_by(|a, b| a.0.cmp(&b.0))
        {
            out.push(p.clone());
        }
    }
    out
}

/// The product of two witnesses has a `V(lambda + mu)`-component valued at
/// `p + q`, over all pairs of extreme points and `samples` random pairs.
pub fn check_semigroup(model: &VarietyModel, bound: u32, samples: usize, seed: u64) -> Report {
    let mut report = Report::new("semigroup", &model.name, bound, seed);
    let semigroup = match enumerate_moment_semigroup(model, bound) {
        Ok(s) => s,
        Err(e) => {
            report.fail("enumerate", e.to_string());
            return report;
        }
    };
    let extreme = extreme_points(model, &semigroup);
    let mut pairs = Vec::new();
    for (i, p) in extreme.iter().enumerate() {
        for q in &extreme[i..] {
            pairs.push((p.clone(), q.clone()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = semigroup.points.choose(&mut rng).expect("origin is always enumerated");
        let q = semigroup.points.choose(&mut rng).expect("origin is always enumerated");
        pairs.push((p.clone(), q.clone()));
    }
    for (p, q) in pairs {
        let label = format!("sum {p} + {q}");
        let (s, t) = (semigroup.witness(&p), semigroup.witness(&q));
        let (Some(s), Some(t)) = (s, t) else {
            report.fail(label, "missing witness section");
            continue;
        };
        match semigroup_sum_witness(model, (&p, s), (&q, t)) {
            Ok((sum, _)) => {
                let expected = p.add(&q);
                report.push(label, sum == expected, format!("got {sum}"));
            }
            Err(e) => report.fail(label, e.to_string()),
        }
    }
    report
}

/// Forgetting the weight is injective on the enumerated semigroup and
/// additive on pairs whose sum stays in the enumerated box.
pub fn check_p_isomorphism(model: &VarietyModel, bound: u32) -> Report {
    let mut report = Report::new("p-isomorphism", &model.name, bound, 0);
    let semigroup = match enumerate_moment_semigroup(model, bound) {
        Ok(s) => s,
        Err(e) => {
            report.fail("enumerate", e.to_string());
            return report;
        }
    };
    match project_to_okounkov(&semigroup.points) {
        Ok(proj) => report.pass("injective", format!("{} points, {} images", semigroup.len(), proj.len())),
        Err(e) => {
            report.fail("injective", e.to_string());
            return report;
        }
    }
    let preimage: BTreeMap<_, _> = semigroup.points.iter().map(|p| (p.okounkov(), p)).collect();
    let within = |p: &MomentPoint| p.divisor.0.iter().all(|&x| x <= i64::from(bound));
    let mut checked = 0usize;
    let mut failures = 0usize;
    for (i, x) in semigroup.points.iter().enumerate() {
        for y in &semigroup.points[i..] {
            let sum = x.add(y);
            if !within(&sum) {
                continue;
            }
            checked += 1;
            let image = x.okounkov();
            let target = crate::semigroup::OkounkovPoint {
                value: image.value.add(&y.value),
                divisor: sum.divisor.clone(),
            };
            match preimage.get(&target) {
                Some(&z) if *z == sum => {}
                found => {
                    failures += 1;
                    let got = found.map_or("nothing".to_string(), |z| z.to_string());
                    report.fail(format!("additive {x} + {y}"), format!("preimage is {got}"));
                }
            }
        }
    }
    report.push(
        "additive",
        failures == 0,
        format!("{checked} pairs, {failures} failures"),
    );
    report
}
