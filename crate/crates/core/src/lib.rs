//! Exact computation of valuations, highest-weight decompositions, moment
//! semigroups and their cones on a catalog of projective spherical varieties.

pub mod exactalg;
pub mod liealg;
pub mod models;
pub mod polyhedra;
pub mod semigroup;
pub mod valuation;
pub mod verification;
