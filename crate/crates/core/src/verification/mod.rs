//! Empirical checks of the structural statements on a concrete model at a
//! bounded degree. Every check returns a [`Report`]; computation errors are
//! recorded as failing entries. Reports depend only on (model, bound, seed).

mod algebraic;
mod cones;
mod report;

pub use algebraic::{check_p_isomorphism, check_semigroup, check_sepvalues, extreme_points, COMBINATIONS_PER_PIECE};
pub use cones::{
    boundary_ray, check_cone_lemmas, check_inductive_formula, check_inductive_formula_with, check_stabilization,
};
pub use report::{Report, ReportEntry, REPORT_HEADER};

use num_bigint::BigInt;

use crate::models::{validate_model, VarietyModel};

pub const DEFAULT_SEED: u64 = 20240;
pub const DEFAULT_SAMPLES: usize = 50;

/// Check names accepted by [`run_check`], in report order.
pub const CHECKS: [&str; 7] = [
    "cone-lemmas",
    "inductive",
    "model",
    "p-isomorphism",
    "semigroup",
    "sepvalues",
    "stabilization",
];

/// Runs one named check. Stabilization compares every bound from 1 to
/// `bound`.
pub fn run_check(name: &str, model: &VarietyModel, bound: u32, seed: u64) -> Option<Report> {
    let report = match name {
        "cone-lemmas" => check_cone_lemmas(model, bound),
        "inductive" => check_inductive_formula(model, bound),
        "model" => validate_model(model),
        "p-isomorphism" => check_p_isomorphism(model, bound),
        "semigroup" => check_semigroup(model, bound, DEFAULT_SAMPLES, seed),
        "sepvalues" => check_sepvalues(model, bound, seed),
        "stabilization" => {
            let bounds: Vec<u32> = (1..=bound).collect();
            check_stabilization(model, &bounds)
        }
        _ => return None,
    };
    Some(report)
}

/// `(0,0,0;1;1,1)`: coordinates grouped into blocks of the given sizes.
pub fn format_blocks(v: &[BigInt], blocks: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut start = 0;
    for &len in blocks {
        let block: Vec<String> = v[start..start + len].iter().map(ToString::to_string).collect();
        parts.push(block.join(","));
        start += len;
    }
    format!("({})", parts.join(";"))
}
