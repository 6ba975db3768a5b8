//! Exact arithmetic for Laurent polynomials over local fields, and effective
//! bounds on roots of unity `ζ` for which `f(ζ)` is again a root of unity.

pub mod bounds;
pub mod classify;
pub mod cli;
pub mod error;
pub mod exact_fields;
pub mod laurent;
pub mod newton;
pub mod torsion_oracle;
mod wire;

pub use error::{Error, Result};
