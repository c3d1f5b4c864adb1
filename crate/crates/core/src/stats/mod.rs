//! Divisor sieves, the coincidence set, factor statistics and growth fits.

mod factor;
mod growth;
mod sieve;

pub use factor::{convergent_factor_stats, factor_profile, factorize, FactorProfile, FactorRecord, FACTOR_LIMIT};
pub use growth::{denominator_growth, DenominatorSample, GrowthFit};
pub use sieve::{
    coincidence_density, divisor_sieve, divisor_sieve_with_cap, hyperbola_sum, in_coincidence_set, primes_up_to,
    CoincidenceReport, DensityPoint, DivisorTable, DEFAULT_SIEVE_CAP,
};
