pub mod audit;
pub mod cf;
pub mod constants;
pub mod diag;
pub mod stats;
