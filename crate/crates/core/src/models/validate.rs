use crate::exactalg::{Polynomial, Rational};
use crate::liealg::{decompose_sections, derivation, Direction};
use crate::verification::Report;

use super::{divisor_grid, VarietyModel};

const SAMPLE_BOUND: u32 = 2;

/// Checks the mechanically checkable hypotheses of a model. Every failure is
/// a report entry.
pub fn validate_model(model: &VarietyModel) -> Report {
    let mut report = Report::new("model", &model.name, SAMPLE_BOUND, 0);
    check_action(model, &mut report);
    check_boundary(model, &mut report);
    check_orbit_chart(model, &mut report);
    check_restriction(model, &mut report);
    check_multiplicity_free(model, &mut report);
    report
}

fn check_action(model: &VarietyModel, report: &mut Report) {
    let action = &model.action;
    let n = model.nvars();
    let mut problems = Vec::new();
    for i in 0..action.rank() {
        let alpha = action.group.simple_root(i);
        for (direction, table) in [(Direction::Raise, &action.raise), (Direction::Lower, &action.lower)] {
            for (j, image) in table[i].iter().enumerate() {
                if image.is_zero() {
                    continue;
                }
                let expected = match direction {
                    Direction::Raise => &action.coordinate_weights[j] + &alpha,
                    Direction::Lower => &action.coordinate_weights[j] - &alpha,
                };
                if action.homogeneous_weight(image) != Some(expected.clone()) {
                    problems.push(format!(
                        "{direction:?}_{i}({}) = {} does not have weight {expected}",
                        model.coordinates[j],
                        model.display(image)
                    ));
                }
                if !model.in_section_space(&model.coordinate_classes[j], image) {
                    problems.push(format!(
                        "{direction:?}_{i}({}) changes the divisor class",
                        model.coordinates[j]
                    ));
                }
            }
        }
    }
    match problems.is_empty() {
        true => report.pass("coordinate-weights", "operators shift weights by simple roots"),
        false => report.fail("coordinate-weights", problems.join("; ")),
    }

    // [e_i, f_j] acts on a coordinate of weight w by delta_ij * w_i
    let mut problems = Vec::new();
    for i in 0..action.rank() {
        for j in 0..action.rank() {
            for k in 0..n {
                let x = Polynomial::var(n, k);
                let ef = derivation(&action.raise[i], &derivation(&action.lower[j], &x));
                let fe = derivation(&action.lower[j], &derivation(&action.raise[i], &x));
                let bracket = &ef - &fe;
                let expected = if i == j {
                    x.scale(&Rational::from_integer(action.coordinate_weights[k].0[i].into()))
                } else {
                    Polynomial::zero(n)
                };
                if bracket != expected {
                    problems.push(format!("[e_{i}, f_{j}]({})", model.coordinates[k]));
                }
            }
        }
    }
    match problems.is_empty() {
        true => report.pass("commutation-relations", "[e_i, f_j] = delta_ij h_i on coordinates"),
        false => report.fail("commutation-relations", format!("violated for {}", problems.join(", "))),
    }
}

fn check_boundary(model: &VarietyModel, report: &mut Report) {
    for b in &model.boundary {
        let label = format!("boundary-invariance[E_{}]", b.index);
        let mut moved = Vec::new();
        for i in 0..model.action.rank() {
            for (name, table) in [("e", &model.action.raise), ("f", &model.action.lower)] {
                if !derivation(&table[i], &b.section).is_zero() {
                    moved.push(format!("{name}_{i}"));
                }
            }
        }
        let weight_ok = model.action.homogeneous_weight(&b.section) == Some(model.zero_weight());
        if moved.is_empty() && weight_ok {
            report.pass(label, format!("{} is G-invariant", model.display(&b.section)));
        } else {
            report.fail(
                label,
                format!(
                    "{} is moved by [{}], weight zero: {weight_ok}",
                    model.display(&b.section),
                    moved.join(", ")
                ),
            );
        }
        let label = format!("boundary-class[E_{}]", b.index);
        if !b.section.is_constant() && model.in_section_space(&b.class, &b.section) {
            report.pass(label, format!("section has class {}", b.class));
        } else {
            report.fail(label, format!("section is not a non-constant element of class {}", b.class));
        }
    }
}

fn check_orbit_chart(model: &VarietyModel, report: &mut Report) {
    let expected = model.dimension.checked_sub(model.boundary_count());
    if expected == Some(model.chart_variables.len()) {
        report.pass("chart-dimension", format!("{} chart variables", model.chart_variables.len()));
    } else {
        report.fail(
            "chart-dimension",
            format!(
                "n - r = {:?} but {} chart variables",
                expected,
                model.chart_variables.len()
            ),
        );
    }
    for b in &model.boundary {
        let label = format!("orbit-in-boundary[E_{}]", b.index);
        match b.section.substitute(&model.orbit_parametrization) {
            Ok(p) if p.is_zero() => report.pass(label, "parametrization annihilates the section"),
            Ok(p) => report.fail(
                label,
                format!(
                    "section restricts to {} on the closed orbit",
                    p.display_with(&model.chart_variables)
                ),
            ),
            Err(e) => report.fail(label, e.to_string()),
        }
    }
}

fn check_restriction(model: &VarietyModel, report: &mut Report) {
    let Some(r) = &model.restriction else {
        return;
    };
    let target = &r.target;
    if target.boundary_count() + 1 == model.boundary_count() && target.dimension + 1 == model.dimension {
        report.pass("restriction-shape", format!("Y_1 is {}", target.name));
    } else {
        report.fail(
            "restriction-shape",
            format!("{} has wrong dimension or boundary count for Y_1", target.name),
        );
    }

    let mut chart_ok = true;
    let mut class_ok = true;
    for (j, image) in r.coordinate_map.iter().enumerate() {
        match image.substitute(&target.orbit_parametrization) {
            Ok(p) if p == model.orbit_parametrization[j] => {}
            _ => chart_ok = false,
        }
        if image.is_zero()
            || !target.in_section_space(&r.restrict_class(&model.coordinate_classes[j]), image)
        {
            class_ok = false;
        }
    }
    report.push(
        "restriction-chart",
        chart_ok,
        "closed-orbit chart factors through Y_1's chart",
    );
    report.push(
        "restriction-classes",
        class_ok,
        "coordinate images have the classes prescribed by psi",
    );

    for b in &model.boundary {
        let label = format!("restriction-boundary[E_{}]", b.index);
        let restricted = match b.section.substitute(&r.coordinate_map) {
            Ok(p) => p,
            Err(e) => {
                report.fail(label, e.to_string());
                continue;
            }
        };
        let ok = if b.index == 1 {
            restricted.is_zero()
        } else {
            target
                .boundary
                .get(b.index - 2)
                .is_some_and(|t| !restricted.is_zero() && restricted.monic() == t.section.monic())
        };
        report.push(label, ok, format!("restricts to {}", target.display(&restricted)));
    }

    let sub = super::validate_model(target);
    report.push(
        "restriction-target-valid",
        sub.passed(),
        format!("{} entries checked on {}", sub.entries.len(), target.name),
    );
}

fn check_multiplicity_free(model: &VarietyModel, report: &mut Report) {
    for d in divisor_grid(model.picard_rank, SAMPLE_BOUND) {
        let label = format!("multiplicity-free{d}");
        match decompose_sections(model, &d) {
            Ok(pieces) => {
                let weights: Vec<String> = pieces.iter().map(|p| p.highest_weight.to_string()).collect();
                report.pass(label, format!("pieces {}", weights.join(" ")));
            }
            Err(e) => report.fail(label, e.to_string()),
        }
    }
}
