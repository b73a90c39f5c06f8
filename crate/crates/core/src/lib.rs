//! Exact counting tools for additive problems about squares and higher
//! powers: energies and sumsets, generalized arithmetic progressions,
//! powers in progressions, points on curves `y^k = f(x)`, incidences and
//! sum-product matchings.

pub mod arith;
mod budget;
pub mod cli;
pub mod curve;
mod error;
pub mod gap;
pub mod incidence;
pub mod intset;
mod ntt;
pub mod powers;
pub mod sumproduct;

pub use budget::Budgets;
pub use error::{Error, Result};
