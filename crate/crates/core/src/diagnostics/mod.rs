//! Approximation criteria, irrationality-measure estimates and the audit of
//! the partial-sum approximation chain.

mod audit;
mod measure;
mod quality;

pub use audit::{eq24_audit, AuditConfig, AuditReport, AuditRow, HypothesisFlags};
pub use measure::{
    is_self_approximation, liouville_cf, mu_estimate, prefix_enclosure, roth_count, RothCensus, RothRow, RothVariant,
};
pub use quality::{approximation_quality, lemma10_check, ApproximationQuality};
