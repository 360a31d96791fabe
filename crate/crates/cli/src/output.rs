//! JSON documents written by the command line. Integers and rationals are
//! decimal strings; key order follows field order.

use serde::{Deserialize, Serialize};

use momentcone::models::VarietyModel;
use momentcone::polyhedra::{ConeRecord, PolytopeRecord};
use momentcone::semigroup::MomentPoint;
use momentcone::verification::Report;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub name: String,
    pub group: String,
    pub dimension: usize,
    pub boundary_divisors: usize,
    pub picard_rank: usize,
    pub description: String,
}

impl ModelSummary {
    pub fn of(model: &VarietyModel) -> Self {
        Self {
            name: model.name.clone(),
            group: model.group().name().to_string(),
            dimension: model.dimension,
            boundary_divisors: model.boundary_count(),
            picard_rank: model.picard_rank,
            description: model.description.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelList {
    pub models: Vec<ModelSummary>,
}

/// Output of `compute`. Each point is a list of coordinate blocks, for
/// example `[value, divisor, weight]` for moment points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeDocument {
    pub model: String,
    pub what: String,
    pub bound: u32,
    pub blocks: Vec<String>,
    pub points: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cone: Option<ConeRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDocument {
    pub model: String,
    pub body: String,
    pub bound: u32,
    pub divisor: Vec<String>,
    pub polytope: PolytopeRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDocument {
    pub header: String,
    pub passed: bool,
    pub reports: Vec<Report>,
}

pub fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn moment_point(p: &MomentPoint) -> Vec<Vec<String>> {
    vec![strings(&p.value.0), strings(&p.divisor.0), strings(&p.weight.0)]
}
