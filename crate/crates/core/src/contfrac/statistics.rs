use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ContinuedFraction;
use crate::error::{Error, Result};
use crate::numerics::ln_biguint;

/// Khinchin's constant, the almost-everywhere limit of the geometric mean of
/// partial quotients.
pub const KHINCHIN_CONSTANT: f64 = 2.685_452_001_065_306;

/// Lévy's constant `pi^2 / (12 ln 2)`, the almost-everywhere limit of
/// `ln(q_n) / n`.
pub fn levy_constant() -> f64 {
    std::f64::consts::PI.powi(2) / (12.0 * std::f64::consts::LN_2)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CfStatistics {
    pub n: usize,
    /// `(a_1 a_2 ... a_n)^(1/n)`.
    pub khinchine_mean: f64,
    /// `ln(q_n) / n`.
    pub levy_slope: f64,
}

/// Geometric mean of the first `n` partial quotients and the growth rate of
/// the `n`-th convergent denominator.
pub fn cf_statistics(cf: &ContinuedFraction, n: usize) -> Result<CfStatistics> {
    if n < 2 {
        return Err(Error::Domain("statistics need n >= 2".into()));
    }
    let quotients = cf.quotients();
    if quotients.len() < n {
        return Err(Error::Domain(format!(
            "statistics need {n} partial quotients, expansion has {}",
            quotients.len()
        )));
    }
    let mut log_sum = 0.0;
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for a in &quotients[..n] {
        log_sum += ln_biguint(a.magnitude());
        let next = a * &q + &q_prev;
        q_prev = std::mem::replace(&mut q, next);
    }
    Ok(CfStatistics {
        n,
        khinchine_mean: (log_sum / n as f64).exp(),
        levy_slope: ln_biguint(q.magnitude()) / n as f64,
    })
}
