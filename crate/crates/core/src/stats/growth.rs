use serde::Serialize;

use crate::error::{Error, Result};

/// One denominator measurement `q_x`, kept as `log2 q_x` so values far
/// beyond `f64` range still fit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DenominatorSample {
    pub x: u64,
    pub log2_q: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthFit {
    /// Least-squares slope of `log2 q_x` against `log2 x`.
    pub fitted_exponent: f64,
    pub intercept: f64,
    /// Coefficient of determination of the log-log line.
    pub r2: f64,
}

/// Fits `log2 q_x = alpha log2 x + c` by ordinary least squares.
pub fn denominator_growth(samples: &[DenominatorSample]) -> Result<GrowthFit> {
    if samples.len() < 5 {
        return Err(Error::DegenerateFit(format!(
            "need at least 5 samples, got {}",
            samples.len()
        )));
    }
    if samples.windows(2).any(|w| w[0].x >= w[1].x) || samples[0].x == 0 {
        return Err(Error::DegenerateFit(
            "x must be positive and strictly increasing".into(),
        ));
    }
    if samples.iter().any(|s| !s.log2_q.is_finite()) {
        return Err(Error::DegenerateFit("non-finite log2 q".into()));
    }
    let n = samples.len() as f64;
    let xs: Vec<f64> = samples.iter().map(|s| (s.x as f64).log2()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.log2_q).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if syy == 0.0 {
        return Err(Error::DegenerateFit("log2 q is constant".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(GrowthFit {
        fitted_exponent: slope,
        intercept,
        r2: 1.0 - sse / syy,
    })
}
