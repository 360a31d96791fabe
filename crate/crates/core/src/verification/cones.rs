use num_bigint::BigInt;
use num_traits::One;

use crate::liealg::u_invariant_generators;
use crate::models::VarietyModel;
use crate::polyhedra::{coordinate_projection, Cone, IntVec};
use crate::semigroup::{
    build_JY_KY, build_J_K, enumerate_moment_semigroup, moment_cone, moment_dimension, okounkov_cone,
    phi_matrix, phi_tilde_matrix, tilde_sets_from, SemigroupError,
};

use super::{format_blocks, Report};

fn moment_blocks(model: &VarietyModel) -> [usize; 3] {
    [model.dimension, model.picard_rank, model.weight_rank()]
}

fn describe(model: &VarietyModel, cone: &Cone) -> String {
    let blocks = moment_blocks(model);
    let rays: Vec<String> = cone.rays().iter().map(|r| format_blocks(r, &blocks)).collect();
    let mut s = format!("rays {}", rays.join(" "));
    if !cone.lineality().is_empty() {
        s.push_str(&format!(", lineality dimension {}", cone.lineality().len()));
    }
    s
}

fn compare(report: &mut Report, label: &str, blocks: &[usize], left: &Cone, right: &Cone) {
    let rays = |c: &Cone| -> String {
        let v: Vec<String> = c.rays().iter().map(|r| format_blocks(r, blocks)).collect();
        format!("{{{}}}", v.join(" "))
    };
    if left == right {
        report.pass(label, format!("both sides {}", rays(left)));
    } else {
        report.fail(label, format!("{} vs {}", rays(left), rays(right)));
    }
}

/// `K_Y = phi(K)`, `K~_Y = Delta~(Y) ∩ pi^-1(K_Y)` and
/// `K~ = ((0 x R_{>=0}^{n-1}) x K) ∩ phi~^-1(K~_Y)`, each as an exact cone
/// equality between the point-generated and the operation-generated side.
pub fn check_cone_lemmas(model: &VarietyModel, bound: u32) -> Report {
    let report = Report::new("cone-lemmas", &model.name, bound, 0);
    if model.restriction.is_none() {
        return report.skip("model has no boundary divisor");
    }
    let mut report = report;
    if let Err(e) = cone_lemmas(model, bound, &mut report) {
        report.fail("error", e.to_string());
    }
    report
}

fn cone_lemmas(model: &VarietyModel, bound: u32, report: &mut Report) -> Result<(), SemigroupError> {
    let restriction = model.restriction.as_ref().expect("checked by caller");
    let target = &restriction.target;
    let n = model.dimension;
    let semigroup = enumerate_moment_semigroup(model, bound)?;
    let sets = build_J_K(model, bound)?;
    let (_, ky) = build_JY_KY(model, &sets)?;
    let tilde = tilde_sets_from(model, &semigroup, &sets)?;

    let divisor_weight = [target.picard_rank, model.weight_rank()];
    let phi_k = sets.k.linear_image(&phi_matrix(model)?)?;
    compare(report, "K_Y = phi(K)", &divisor_weight, &ky, &phi_k);

    let y_semigroup = enumerate_moment_semigroup(target, bound)?;
    let delta_y = moment_cone(target, &y_semigroup.points)?;
    let y_dim = moment_dimension(target);
    let pi: Vec<usize> = (target.dimension..y_dim).collect();
    let pulled = ky.linear_preimage(&coordinate_projection(y_dim, &pi))?;
    let rhs = delta_y.intersect(&pulled)?;
    compare(
        report,
        "K~_Y = Delta~(Y) ∩ pi^-1(K_Y)",
        &moment_blocks(target),
        &tilde.k_tilde_y,
        &rhs,
    );

    let unit = |i: usize| -> IntVec { (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::from(0) }).collect() };
    let ineqs: Vec<IntVec> = (1..n).map(unit).collect();
    let first_zero = Cone::from_inequalities(n, &ineqs, &[unit(0)])?;
    let phi_tilde = phi_tilde_matrix(model)?;
    let rhs = first_zero
        .product(&sets.k)
        .intersect(&tilde.k_tilde_y.linear_preimage(&phi_tilde)?)?;
    compare(
        report,
        "K~ = ((0 x R^{n-1}_{>=0}) x K) ∩ phi~^-1(K~_Y)",
        &moment_blocks(model),
        &tilde.k_tilde,
        &rhs,
    );

    let image = tilde.k_tilde.linear_image(&phi_tilde)?;
    compare(report, "K~_Y = phi~(K~)", &moment_blocks(target), &tilde.k_tilde_y, &image);

    let offenders: Vec<String> = tilde
        .j_tilde
        .iter()
        .filter(|p| p.value.0[0] != 0)
        .map(ToString::to_string)
        .collect();
    report.push(
        "first value coordinate vanishes on J~",
        offenders.is_empty(),
        if offenders.is_empty() {
            format!("{} points", tilde.j_tilde.len())
        } else {
            offenders.join(" ")
        },
    );

    let mut disagreements = Vec::new();
    for (x, y) in &tilde.images {
        let q: Vec<_> = crate::exactalg::integer_vector_to_rationals(&x.coordinates());
        let lin = phi_tilde.mul_vector(&q);
        let actual = crate::exactalg::integer_vector_to_rationals(&y.coordinates());
        if lin != actual {
            disagreements.push(format!("{x} -> {y}"));
        }
    }
    report.push(
        "linear phi~ agrees with restriction on J~",
        disagreements.is_empty(),
        if disagreements.is_empty() {
            format!("{} images", tilde.images.len())
        } else {
            disagreements.join(" ")
        },
    );
    Ok(())
}

/// The ray `(e_1; [E_1]; 0)` added to the generators of `K~`.
pub fn boundary_ray(model: &VarietyModel) -> Option<Vec<i64>> {
    let e1 = model.boundary.first()?;
    let mut v = vec![0; moment_dimension(model)];
    v[0] = 1;
    v[model.dimension..model.dimension + model.picard_rank].copy_from_slice(&e1.class.0);
    Some(v)
}

/// `Delta~ = cone(K~ ∪ {(e_1; [E_1]; 0)})`.
pub fn check_inductive_formula(model: &VarietyModel, bound: u32) -> Report {
    match boundary_ray(model) {
        Some(ray) => check_inductive_formula_with(model, bound, &ray),
        None => Report::new("inductive", &model.name, bound, 0).skip("model has no boundary divisor"),
    }
}

/// As [`check_inductive_formula`] with an arbitrary extra generator.
pub fn check_inductive_formula_with(model: &VarietyModel, bound: u32, extra_ray: &[i64]) -> Report {
    let mut report = Report::new("inductive", &model.name, bound, 0);
    if model.restriction.is_none() {
        return report.skip("model has no boundary divisor");
    }
    let run = |report: &mut Report| -> Result<(), SemigroupError> {
        let semigroup = enumerate_moment_semigroup(model, bound)?;
        let sets = build_J_K(model, bound)?;
        let tilde = tilde_sets_from(model, &semigroup, &sets)?;
        let dim = moment_dimension(model);
        let mut rays: Vec<IntVec> = tilde.k_tilde.rays().to_vec();
        rays.push(extra_ray.iter().map(|&x| BigInt::from(x)).collect());
        let generated = Cone::from_rays_and_lineality(dim, &rays, tilde.k_tilde.lineality())?;
        let enumerated = moment_cone(model, &semigroup.points)?;
        compare(
            report,
            "Delta~ = cone(K~ + boundary ray)",
            &moment_blocks(model),
            &generated,
            &enumerated,
        );
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.fail("error", e.to_string());
    }
    report
}

/// Cones generated by the points with classes in `[0, b]^rho` agree for
/// consecutive bounds from the model's stabilization threshold on. Reports
/// the stabilized rays and, with a boundary, the stability of `K` together
/// with the `U`-invariant generators up to the largest bound.
pub fn check_stabilization(model: &VarietyModel, bounds: &[u32]) -> Report {
    let mut bounds = bounds.to_vec();
    bounds.sort_unstable();
    bounds.dedup();
    let top = bounds.last().copied().unwrap_or(0);
    let mut report = Report::new("stabilization", &model.name, top, 0);
    if bounds.len() < 2 {
        return report.skip("fewer than two bounds");
    }
    if let Err(e) = stabilization(model, &bounds, &mut report) {
        report.fail("error", e.to_string());
    }
    report
}

fn stabilization(model: &VarietyModel, bounds: &[u32], report: &mut Report) -> Result<(), SemigroupError> {
    let threshold = model.stabilization_bound.unwrap_or(1);
    let top = *bounds.last().expect("at least two bounds");
    let full = enumerate_moment_semigroup(model, top)?;
    let mut moment = Vec::new();
    let mut okounkov = Vec::new();
    let mut restriction_cones = Vec::new();
    for &b in bounds {
        let s = full.truncate(b);
        moment.push(moment_cone(model, &s.points)?);
        okounkov.push(okounkov_cone(model, &s.okounkov_points())?);
        if model.restriction.is_some() {
            restriction_cones.push(build_J_K(model, b)?.k);
        }
    }
    let okounkov_blocks = [model.dimension, model.picard_rank];
    let k_blocks = [model.picard_rank, model.weight_rank()];
    for i in 1..bounds.len() {
        let (b, b2) = (bounds[i - 1], bounds[i]);
        if b < threshold {
            report.pass(
                format!("bounds {b} < {b2}"),
                format!("not compared below the threshold {threshold}"),
            );
            continue;
        }
        compare(report, &format!("Delta bounds {b} = {b2}"), &okounkov_blocks, &okounkov[i - 1], &okounkov[i]);
        compare(report, &format!("Delta~ bounds {b} = {b2}"), &moment_blocks(model), &moment[i - 1], &moment[i]);
        if !restriction_cones.is_empty() {
            compare(report, &format!("K bounds {b} = {b2}"), &k_blocks, &restriction_cones[i - 1], &restriction_cones[i]);
        }
    }
    report.pass("stabilized Delta~", describe(model, moment.last().expect("nonempty")));
    if model.restriction.is_some() {
        let gens = u_invariant_generators(model, top)?;
        let listed: Vec<String> = gens.iter().map(|(_, d, w)| format!("{d}{w}")).collect();
        report.pass(
            "U-invariant generators",
            format!("{} up to bound {top}: {}", gens.len(), listed.join(" ")),
        );
    }
    Ok(())
}
