use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::contfrac::{convergents, ContinuedFraction, Convergent, Termination};
use crate::error::{Error, Result};
use crate::numerics::{log2_bigint, BallReal, Precision, Rational, Truth};

/// Finite-window estimate of the irrationality measure,
/// `1 + max log q_{k+1} / log q_k` over the suffix `n/2 <= k < n` (skipping
/// `q_k < 2`). A terminated expansion is rational and reports 1.
///
/// This is an upper envelope over the observed window, not the limsup.
pub fn mu_estimate(cf: &ContinuedFraction, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::Domain("mu_estimate needs n >= 3".into()));
    }
    if cf.is_terminated() {
        return Ok(1.0);
    }
    let list = convergents(cf, n + 1).items;
    if list.len() < n + 1 {
        return Err(Error::Domain(format!(
            "mu_estimate needs {} convergents, expansion gives {}",
            n + 1,
            list.len()
        )));
    }
    let best = (n / 2..n)
        .filter(|&k| list[k].q > BigInt::one())
        .map(|k| log2_bigint(&list[k + 1].q) / log2_bigint(&list[k].q))
        .fold(f64::NEG_INFINITY, f64::max);
    if !best.is_finite() {
        return Err(Error::Domain("no convergent denominators above 1 in the window".into()));
    }
    Ok(1.0 + best)
}

/// The expansion `[0; a_1, a_2, ...]` with `a_1 = 10` and
/// `a_{k+1} = q_k^(k-1)`, so that `q_{k+1}` is about `q_k^k`.
pub fn liouville_cf(depth: usize) -> Result<ContinuedFraction> {
    if depth == 0 || depth > 9 {
        return Err(Error::Domain(format!("liouville depth {depth} outside 1..=9")));
    }
    let mut quotients = vec![BigInt::from(10)];
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::from(10));
    for k in 1..depth {
        let a = q.pow((k - 1) as u32);
        let next = &a * &q + &q_prev;
        quotients.push(a);
        q_prev = std::mem::replace(&mut q, next);
    }
    ContinuedFraction::new(BigInt::zero(), quotients, Termination::Capped)
}

/// Ball around the number whose expansion begins with `cf`, valid for any
/// continuation: the value lies between the last two convergents.
pub fn prefix_enclosure(cf: &ContinuedFraction, precision: Precision) -> Result<BallReal> {
    let list = convergents(cf, cf.len()).items;
    if list.len() < 2 {
        return Err(Error::Domain("enclosure needs at least one partial quotient".into()));
    }
    let a = list[list.len() - 2].value();
    let b = list[list.len() - 1].value();
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    BallReal::from_interval(&lo, &hi, precision)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RothVariant {
    /// `|xi - p/q| <= q^(-2-eps)`.
    Roth,
    /// `|xi - p/q| <= q^-2 (log q)^(-1-eps)`.
    Lange,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RothRow {
    pub index: usize,
    pub q_bits: u64,
    /// Certified bounds on `log2 |xi - p/q|`, when the gap is separated
    /// from zero.
    pub log2_gap: Option<(f64, f64)>,
    pub log2_threshold: Option<f64>,
    pub satisfied: Truth,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RothCensus {
    pub variant: RothVariant,
    pub epsilon: f64,
    pub satisfied: usize,
    pub failed: usize,
    pub undecidable: usize,
    pub rows: Vec<RothRow>,
}

fn pad(x: f64) -> f64 {
    1e-9 * (1.0 + x.abs())
}

/// Counts convergents certifiably inside the Roth (or Lange) region. The
/// comparison runs on `log2` bounds; anything not separated by the padding
/// is counted as undecidable, as is the Lange threshold at `q = 1`.
pub fn roth_count(target: &BallReal, list: &[Convergent], epsilon: f64, variant: RothVariant) -> Result<RothCensus> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::Domain(format!("epsilon must be positive, got {epsilon}")));
    }
    let mut census = RothCensus {
        variant,
        epsilon,
        satisfied: 0,
        failed: 0,
        undecidable: 0,
        rows: Vec::with_capacity(list.len()),
    };
    for c in list {
        let log2_q = log2_bigint(&c.q);
        let threshold = match variant {
            RothVariant::Roth => Some(-(2.0 + epsilon) * log2_q),
            RothVariant::Lange if c.q > BigInt::one() => {
                let ln_q = log2_q * std::f64::consts::LN_2;
                Some(-2.0 * log2_q - (1.0 + epsilon) * ln_q.log2())
            }
            RothVariant::Lange => None,
        };
        let diff = target.sub_rational(&c.value());
        let bounds = if diff.contains_zero() {
            None
        } else {
            diff.abs().log2_bounds()
        };
        let satisfied = match (bounds, threshold) {
            (Some((lo, hi)), Some(t)) => {
                if hi <= t - pad(t) {
                    Truth::True
                } else if lo > t + pad(t) {
                    Truth::False
                } else {
                    Truth::Undecidable
                }
            }
            _ => Truth::Undecidable,
        };
        match satisfied {
            Truth::True => census.satisfied += 1,
            Truth::False => census.failed += 1,
            Truth::Undecidable => census.undecidable += 1,
        }
        census.rows.push(RothRow {
            index: c.index,
            q_bits: c.q.bits(),
            log2_gap: bounds,
            log2_threshold: threshold,
            satisfied,
        });
    }
    Ok(census)
}

/// Whether the convergent equals the rational target exactly. Such
/// self-approximations are filtered out before counting.
pub fn is_self_approximation(target: &Rational, c: &Convergent) -> bool {
    *target == c.value()
}
