//! Diophantine-approximation laboratory: exact rationals, certified balls,
//! continued fractions, Dirichlet beta series and the diagnostics built on
//! them.

pub mod constants;
pub mod contfrac;
pub mod diagnostics;
pub mod error;
pub mod lseries;
pub mod numerics;
pub mod stats;

pub use error::{Error, Result};

pub(crate) fn serde_display<T: std::fmt::Display, S: serde::Serializer>(
    value: &T,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}
