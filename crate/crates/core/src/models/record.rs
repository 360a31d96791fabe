use serde::{Deserialize, Serialize};

use crate::exactalg::Polynomial;
use crate::liealg::{ChevalleyAction, GroupType, Weight};

use super::{load_model, BoundaryDivisor, BoundaryRestriction, DivisorClass, ModelError, VarietyModel};

/// Serialized form of a [`VarietyModel`]. Polynomials are strings in the
/// grammar accepted by [`Polynomial::parse`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelRecord {
    pub name: String,
    #[serde(default)]
    pub description: String,
    pub group: GroupType,
    pub dimension: usize,
    pub picard_rank: usize,
    pub coordinates: Vec<String>,
    pub coordinate_weights: Vec<Vec<i64>>,
    pub coordinate_classes: Vec<Vec<i64>>,
    pub raise: Vec<Vec<String>>,
    pub lower: Vec<Vec<String>>,
    #[serde(default)]
    pub boundary: Vec<BoundaryRecord>,
    pub chart_variables: Vec<String>,
    pub orbit_parametrization: Vec<String>,
    #[serde(default)]
    pub restriction: Option<RestrictionRecord>,
    #[serde(default)]
    pub degrees: Vec<DegreeRecord>,
    #[serde(default)]
    pub stabilization_bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundaryRecord {
    pub section: String,
    pub class: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionRecord {
    /// Catalog name of the model describing `Y_1`.
    pub target: String,
    pub coordinate_map: Vec<String>,
    pub divisor_map: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeRecord {
    pub class: Vec<i64>,
    pub degree: i64,
}

fn malformed(msg: impl Into<String>) -> ModelError {
    ModelError::Malformed(msg.into())
}

fn parse_all(items: &[String], names: &[String]) -> Result<Vec<Polynomial>, ModelError> {
    items
        .iter()
        .map(|s| Polynomial::parse(s, names).map_err(|e| malformed(format!("`{s}`: {e}"))))
        .collect()
}

pub(super) fn build(r: &ModelRecord) -> Result<VarietyModel, ModelError> {
    let n = r.coordinates.len();
    let rank = r.group.rank();
    let rho = r.picard_rank;
    if r.coordinate_weights.len() != n || r.coordinate_weights.iter().any(|w| w.len() != rank) {
        return Err(malformed("coordinate_weights must give one weight of the group's rank per coordinate"));
    }
    if r.coordinate_classes.len() != n || r.coordinate_classes.iter().any(|c| c.len() != rho) {
        return Err(malformed("coordinate_classes must give one class per coordinate"));
    }
    // a zero or negative grading would make section spaces infinite
    if r
        .coordinate_classes
        .iter()
        .any(|c| c.iter().any(|&x| x < 0) || c.iter().all(|&x| x == 0))
    {
        return Err(malformed("coordinate classes must be nonzero and nonnegative"));
    }
    for (label, table) in [("raise", &r.raise), ("lower", &r.lower)] {
        if table.len() != rank || table.iter().any(|row| row.len() != n) {
            return Err(malformed(format!("{label} needs {rank} operators with {n} images each")));
        }
    }
    if r.orbit_parametrization.len() != n {
        return Err(malformed("orbit_parametrization needs one image per coordinate"));
    }

    let raise = r
        .raise
        .iter()
        .map(|row| parse_all(row, &r.coordinates))
        .collect::<Result<Vec<_>, _>>()?;
    let lower = r
        .lower
        .iter()
        .map(|row| parse_all(row, &r.coordinates))
        .collect::<Result<Vec<_>, _>>()?;
    let action = ChevalleyAction {
        group: r.group,
        raise,
        lower,
        coordinate_weights: r.coordinate_weights.iter().cloned().map(Weight).collect(),
    };

    let boundary = r
        .boundary
        .iter()
        .enumerate()
        .map(|(i, b)| {
            if b.class.len() != rho {
                return Err(malformed("boundary class has wrong length"));
            }
            let section = Polynomial::parse(&b.section, &r.coordinates)
                .map_err(|e| malformed(format!("boundary section: {e}")))?;
            Ok(BoundaryDivisor {
                index: i + 1,
                section,
                class: DivisorClass(b.class.clone()),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let orbit_parametrization = parse_all(&r.orbit_parametrization, &r.chart_variables)?;

    let restriction = match &r.restriction {
        None => None,
        Some(rr) => {
            let target = load_model(&rr.target)?;
            if rr.coordinate_map.len() != n {
                return Err(malformed("restriction coordinate_map needs one image per coordinate"));
            }
            if rr.divisor_map.len() != target.picard_rank
                || rr.divisor_map.iter().any(|row| row.len() != rho)
            {
                return Err(malformed("restriction divisor_map has wrong shape"));
            }
            let coordinate_map = parse_all(&rr.coordinate_map, &target.coordinates)?;
            Some(BoundaryRestriction {
                target: Box::new(target),
                coordinate_map,
                divisor_map: rr.divisor_map.clone(),
            })
        }
    };
    if !boundary.is_empty() && restriction.is_none() {
        return Err(malformed("a model with boundary needs a restriction to Y_1"));
    }

    Ok(VarietyModel {
        name: r.name.clone(),
        description: r.description.clone(),
        dimension: r.dimension,
        picard_rank: rho,
        coordinates: r.coordinates.clone(),
        coordinate_classes: r.coordinate_classes.iter().cloned().map(DivisorClass).collect(),
        action,
        boundary,
        chart_variables: r.chart_variables.clone(),
        orbit_parametrization,
        restriction,
        degrees: r
            .degrees
            .iter()
            .map(|d| (DivisorClass(d.class.clone()), d.degree))
            .collect(),
        stabilization_bound: r.stabilization_bound,
    })
}

pub(super) fn to_record(m: &VarietyModel) -> ModelRecord {
    let show = |p: &Polynomial, names: &[String]| p.display_with(names).to_string();
    let table = |t: &[Vec<Polynomial>]| -> Vec<Vec<String>> {
        t.iter()
            .map(|row| row.iter().map(|p| show(p, &m.coordinates)).collect())
            .collect()
    };
    ModelRecord {
        name: m.name.clone(),
        description: m.description.clone(),
        group: m.action.group,
        dimension: m.dimension,
        picard_rank: m.picard_rank,
        coordinates: m.coordinates.clone(),
        coordinate_weights: m.action.coordinate_weights.iter().map(|w| w.0.clone()).collect(),
        coordinate_classes: m.coordinate_classes.iter().map(|c| c.0.clone()).collect(),
        raise: table(&m.action.raise),
        lower: table(&m.action.lower),
        boundary: m
            .boundary
            .iter()
            .map(|b| BoundaryRecord {
                section: show(&b.section, &m.coordinates),
                class: b.class.0.clone(),
            })
            .collect(),
        chart_variables: m.chart_variables.clone(),
        orbit_parametrization: m
            .orbit_parametrization
            .iter()
            .map(|p| show(p, &m.chart_variables))
            .collect(),
        restriction: m.restriction.as_ref().map(|r| RestrictionRecord {
            target: r.target.name.clone(),
            coordinate_map: r
                .coordinate_map
                .iter()
                .map(|p| show(p, &r.target.coordinates))
                .collect(),
            divisor_map: r.divisor_map.clone(),
        }),
        degrees: m
            .degrees
            .iter()
            .map(|(c, d)| DegreeRecord {
                class: c.0.clone(),
                degree: *d,
            })
            .collect(),
        stabilization_bound: m.stabilization_bound,
    }
}
