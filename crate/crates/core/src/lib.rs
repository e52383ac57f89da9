//! Exact symbolic construction of the Demazure-Lusztig representation of the
//! double affine Hecke algebra at critical level, with machine verification
//! of every defining relation, Bruhat triangularity and the PBW basis
//! property at desk scale.
//!
//! The crate is organized as a tower:
//!
//! * [`root_data`] realizes affine root systems with reduced gradient in
//!   exact rational coordinates;
//! * [`affine_weyl`] implements the extended affine Weyl group, lengths,
//!   reduced words, Bruhat order and the length-zero subgroup;
//! * [`coeff`] provides the coefficient algebras: Laurent polynomials in the
//!   Hecke parameters, the group algebra of the weight lattice, and its
//!   localization at root denominators;
//! * [`smash`] is the smash product of the coefficient algebra with the
//!   extended affine Weyl group;
//! * [`basic_rep`] builds the Demazure-Lusztig operators and runs all
//!   relation, triangularity and independence checks;
//! * [`poly_rep`] specializes the level and acts on plain Laurent
//!   polynomials;
//! * [`report`] assembles structured verification reports and drives whole
//!   suites.
//!
//! All arithmetic is exact: rational coefficients of arbitrary precision and
//! integer lattice coordinates. Equality of algebra elements is decided on
//! canonical normal forms, never numerically.

// Index loops mirror the matrix formulas throughout the lattice code.
#![allow(clippy::needless_range_loop)]

pub mod affine_weyl;
pub mod basic_rep;
pub mod coeff;
pub mod geometry;
pub mod poly_rep;
pub mod report;
pub mod root_data;
pub mod smash;

/// Crate-level error type for fallible construction paths.
///
/// Internal consistency violations (mixing elements of different root
/// systems, broken lattice representations) panic instead: they indicate
/// programming errors, not bad input.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("inadmissible root system specification: {0}")]
    InadmissibleSpec(String),
    #[error("invalid affine root: {0}")]
    InvalidAffineRoot(String),
    #[error("tau specialization values must be nonzero")]
    ZeroSpecialization,
    #[error("invalid run configuration: {0}")]
    InvalidConfig(String),
}
