//! Finite-category computations: ends and coends by several independent
//! routes, weighted (co)limits, twisted arrow and simplex categories, and
//! the brute-force checks that the routes agree.
//!
//! Everything lives in the category of finite sets. Categories are given by
//! explicit object/morphism tables with a total composition map, functors by
//! index maps, and Set-valued functors by element lists and function tables.
//! All values are immutable after construction; every operation is a pure
//! function of its inputs.

pub mod check;
pub mod coends;
pub mod constructions;
pub mod corpus;
pub mod fincat;
pub mod schema;
pub mod setops;
pub mod simplicial;
pub mod weighted;

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("enumeration budget exceeded: {0}")]
    Budget(String),
    #[error("truncation did not stabilize: {0}")]
    Truncation(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("variance/convention mismatch: {0}")]
    Convention(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
