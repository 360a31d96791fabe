//! Catalog of concrete spherical varieties.
//!
//! A model is a declarative record (see `schemas/model.schema.json`): the
//! coordinate ring with its grading and Chevalley action, the boundary
//! sections, the big-cell chart of the closed orbit, and, when there is a
//! boundary, the restriction to the first boundary divisor as another model.

mod record;
mod validate;

pub use record::{BoundaryRecord, DegreeRecord, ModelRecord, RestrictionRecord};
pub use validate::validate_model;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{Exponent, Polynomial, RationalMatrix};
use crate::liealg::{ChevalleyAction, GroupType, Weight};

pub const CATALOG: [&str; 4] = ["p1_sl2", "p1xp1_sl2sl2", "p2_sl3", "pgl2_wonderful"];

fn catalog_source(name: &str) -> Option<&'static str> {
    match name {
        "p1_sl2" => Some(include_str!("../../models/p1_sl2.json")),
        "p1xp1_sl2sl2" => Some(include_str!("../../models/p1xp1_sl2sl2.json")),
        "p2_sl3" => Some(include_str!("../../models/p2_sl3.json")),
        "pgl2_wonderful" => Some(include_str!("../../models/pgl2_wonderful.json")),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("malformed model record: {0}")]
    Malformed(String),
}

/// A class in `N^1(X)`, in the model's own Picard coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    pub fn zero(rho: usize) -> Self {
        DivisorClass(vec![0; rho])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub_scaled(&self, other: &DivisorClass, k: i64) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a - k * b).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `E_i = Z(s_i)` for a G-invariant section `s_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryDivisor {
    pub index: usize,
    pub section: Polynomial,
    pub class: DivisorClass,
}

/// Restriction to `Y_1 = E_1`, which is itself a catalog model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryRestriction {
    pub target: Box<VarietyModel>,
    /// Images of this model's coordinates in the target's coordinates.
    pub coordinate_map: Vec<Polynomial>,
    /// `psi`: rows indexed by the target's Picard coordinates.
    pub divisor_map: Vec<Vec<i64>>,
}

impl BoundaryRestriction {
    pub fn restrict_class(&self, d: &DivisorClass) -> DivisorClass {
        DivisorClass(
            self.divisor_map
                .iter()
                .map(|row| row.iter().zip(&d.0).map(|(a, b)| a * b).sum())
                .collect(),
        )
    }

    pub fn divisor_matrix(&self, source_rank: usize) -> RationalMatrix {
        RationalMatrix::from_integer_rows(source_rank, &self.divisor_map)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyModel {
    pub name: String,
    pub description: String,
    pub dimension: usize,
    pub picard_rank: usize,
    pub coordinates: Vec<String>,
    pub coordinate_classes: Vec<DivisorClass>,
    pub action: ChevalleyAction,
    pub boundary: Vec<BoundaryDivisor>,
    pub chart_variables: Vec<String>,
    /// Model coordinates in terms of the chart variables of the closed orbit.
    pub orbit_parametrization: Vec<Polynomial>,
    pub restriction: Option<BoundaryRestriction>,
    /// Recorded top intersection numbers `D^n` for ample classes.
    pub degrees: Vec<(DivisorClass, i64)>,
    pub stabilization_bound: Option<u32>,
}

impl VarietyModel {
    pub fn boundary_count(&self) -> usize {
        self.boundary.len()
    }

    pub fn group(&self) -> GroupType {
        self.action.group
    }

    pub fn weight_rank(&self) -> usize {
        self.action.rank()
    }

    pub fn nvars(&self) -> usize {
        self.coordinates.len()
    }

    pub fn class_of_monomial(&self, exponent: &[u32]) -> DivisorClass {
        let mut d = vec![0i64; self.picard_rank];
        for (k, c) in exponent.iter().zip(&self.coordinate_classes) {
            for (x, y) in d.iter_mut().zip(&c.0) {
                *x += i64::from(*k) * y;
            }
        }
        DivisorClass(d)
    }

    /// True when every term of `p` has class `divisor`. The zero polynomial
    /// lies in every section space.
    pub fn in_section_space(&self, divisor: &DivisorClass, p: &Polynomial) -> bool {
        p.nvars() == self.nvars() && p.terms().all(|(e, _)| self.class_of_monomial(e) == *divisor)
    }

    /// Monomials spanning `H^0(X, O(D))`, in increasing lex order. Empty for
    /// non-effective classes.
    pub fn section_space_basis(&self, divisor: &DivisorClass) -> Vec<Exponent> {
        let mut out = Vec::new();
        if divisor.0.len() != self.picard_rank || divisor.0.iter().any(|&x| x < 0) {
            return out;
        }
        let mut current = vec![0u32; self.nvars()];
        self.enumerate_monomials(0, divisor.0.clone(), &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate_monomials(
        &self,
        index: usize,
        remaining: Vec<i64>,
        current: &mut Vec<u32>,
        out: &mut Vec<Exponent>,
    ) {
        if index == self.nvars() {
            if remaining.iter().all(|&x| x == 0) {
                out.push(current.clone());
            }
            return;
        }
        let class = &self.coordinate_classes[index].0;
        let mut rem = remaining;
        let mut k = 0;
        loop {
            current[index] = k;
            self.enumerate_monomials(index + 1, rem.clone(), current, out);
            rem = rem.iter().zip(class).map(|(r, c)| r - c).collect();
            if rem.iter().any(|&x| x < 0) || class.iter().all(|&c| c == 0) {
                break;
            }
            k += 1;
        }
        current[index] = 0;
    }

    pub fn is_effective(&self, divisor: &DivisorClass) -> bool {
        !self.section_space_basis(divisor).is_empty()
    }

    pub fn parse_polynomial(&self, s: &str) -> Result<Polynomial, ModelError> {
        Polynomial::parse(s, &self.coordinates).map_err(|e| ModelError::Malformed(e.to_string()))
    }

    pub fn display(&self, p: &Polynomial) -> String {
        p.display_with(&self.coordinates).to_string()
    }

    pub fn from_record(record: &ModelRecord) -> Result<Self, ModelError> {
        record::build(record)
    }

    pub fn to_record(&self) -> ModelRecord {
        record::to_record(self)
    }

    pub fn from_json(json: &str) -> Result<Self, ModelError> {
        let record: ModelRecord =
            serde_json::from_str(json).map_err(|e| ModelError::Malformed(e.to_string()))?;
        Self::from_record(&record)
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.weight_rank())
    }
}

pub fn load_model(name: &str) -> Result<VarietyModel, ModelError> {
    let src = catalog_source(name).ok_or_else(|| ModelError::UnknownModel(name.to_string()))?;
    VarietyModel::from_json(src)
}

/// All classes in the box `[0, bound]^rho`, in increasing lex order.
pub fn divisor_grid(rho: usize, bound: u32) -> Vec<DivisorClass> {
    let mut out = vec![Vec::new()];
    for _ in 0..rho {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=i64::from(bound)).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(DivisorClass).collect()
}
