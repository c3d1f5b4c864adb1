use serde::Serialize;

use crate::error::{Error, Result};
use crate::lseries::{beta_value, conv_partial_exact_at, denominator_log2, tail_bound, PartialSum, DEFAULT_EXACT_CAP};
use crate::numerics::{Precision, Rational, Truth};
use crate::stats::{denominator_growth, DenominatorSample};

/// Tunables of the audit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AuditConfig {
    /// The `epsilon` of the growth claims and of the upper sandwich exponent.
    pub epsilon: f64,
    /// Allowed deviation of a residual exponent from its claimed range.
    pub band: f64,
    /// Largest cutoff for the exact sums.
    pub cap: u64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            epsilon: 0.1,
            band: 0.15,
            cap: DEFAULT_EXACT_CAP,
        }
    }
}

/// Measurements at one cutoff `x`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditRow {
    pub x: u64,
    /// Bit length of the reduced denominator `q_x`.
    pub q_bits: u64,
    pub log2_q: f64,
    /// `log2 q_x / log2 x`.
    pub q_over_x_exponent: f64,
    /// Rigorous bound on the tail beyond `x`.
    pub tail_upper: Rational,
    /// Certified bounds on `log2 |L(s, chi)^2 - p_x/q_x|`.
    pub log2_gap_lower: f64,
    pub log2_gap_upper: f64,
    /// The certified gap is at most the tail bound.
    pub gap_le_tail: Truth,
    /// `(log2 q_x - log2 c - (s - 1) log2 x) / log2 x` within
    /// `[-epsilon - band, band]`, `c` fitted with slope `s - 1`.
    pub lemma15_claim1_ok: bool,
    /// The same with slope `s`.
    pub lemma15_claim2_ok: bool,
    /// The row whose gap fixed the sandwich constants.
    pub calibration: bool,
    /// `c3 / q_x <= gap`.
    pub sandwich_lower_ok: Truth,
    /// `gap <= c5 / q_x^(s - epsilon)`.
    pub sandwich_upper_ok: Truth,
    /// `c3 / q_x <= c5 / q_x^(s - epsilon)`, i.e. the sandwich is nonempty.
    pub eq24_lower_le_upper: Truth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisFlags {
    /// Every row satisfies the slope-`(s-1)` growth band.
    pub lemma15_claim1: bool,
    /// Some row satisfies the slope-`s` growth band (the claim is about a
    /// thin subset of cutoffs).
    pub lemma15_claim2: bool,
    /// The fitted growth exponent is at most `1 + band`, as a linear bound
    /// `q_x <= c x` requires.
    pub eq22_qx_le_cx: bool,
    /// Every row has all three sandwich comparisons certifiably true.
    pub eq24_sandwich_satisfiable: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub s: u32,
    pub precision_bits: u32,
    pub epsilon: f64,
    pub band: f64,
    pub rows: Vec<AuditRow>,
    /// Points used in the growth fit: the grid, plus geometric midpoints
    /// when the grid is shorter than five points.
    pub fit_samples: Vec<DenominatorSample>,
    pub fitted_exponent: f64,
    pub intercept: f64,
    pub r2: f64,
    /// `log2` of the sandwich constants fitted on the calibration row.
    pub log2_c3: f64,
    pub log2_c5: f64,
    pub hypothesis_flags: HypothesisFlags,
}

/// Inserts integer geometric midpoints until there are at least five
/// distinct cutoffs.
fn fit_points(grid: &[u64]) -> Result<Vec<u64>> {
    let mut points = grid.to_vec();
    while points.len() < 5 {
        let mut next = Vec::with_capacity(points.len() * 2);
        for w in points.windows(2) {
            next.push(w[0]);
            let mid = ((w[0] as f64) * (w[1] as f64)).sqrt().round() as u64;
            if mid > w[0] && mid < w[1] {
                next.push(mid);
            }
        }
        next.push(*points.last().expect("nonempty"));
        if next.len() == points.len() {
            return Err(Error::DegenerateFit("grid too dense to reach five fit points".into()));
        }
        points = next;
    }
    Ok(points)
}

/// Three-valued `a <= b` for `a` in `[a_lo, a_hi]`, `b` in `[b_lo, b_hi]`.
fn le_bounds(a: (f64, f64), b: (f64, f64)) -> Truth {
    let pad = |v: f64| 1e-9 * (1.0 + v.abs());
    if a.1 + pad(a.1) <= b.0 - pad(b.0) {
        Truth::True
    } else if a.0 - pad(a.0) > b.1 + pad(b.1) {
        Truth::False
    } else {
        Truth::Undecidable
    }
}

/// Measures the partial-sum approximation chain at each cutoff of `grid`.
///
/// Unnamed constants are fitted, never assumed: growth constants by least
/// squares with the claimed slope, sandwich constants from the first row.
/// The report states what the numbers show and draws no conclusion.
pub fn eq24_audit(s: u32, grid: &[u64], precision: Precision, config: &AuditConfig) -> Result<AuditReport> {
    if grid.len() < 3 {
        return Err(Error::Domain(format!(
            "audit grid needs at least 3 cutoffs, got {}",
            grid.len()
        )));
    }
    if grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("audit grid must be strictly increasing".into()));
    }
    if grid[0] < 16 {
        return Err(Error::Domain("audit cutoffs must be at least 16".into()));
    }
    if config.epsilon.is_nan() || config.epsilon <= 0.0 || config.band.is_nan() || config.band < 0.0 {
        return Err(Error::Domain("epsilon must be positive and band nonnegative".into()));
    }
    let points = fit_points(grid)?;
    let sums: Vec<PartialSum> = conv_partial_exact_at(s, &points, config.cap)?;
    let samples: Vec<DenominatorSample> = sums
        .iter()
        .map(|p| DenominatorSample {
            x: p.x,
            log2_q: denominator_log2(p),
        })
        .collect();
    let fit = denominator_growth(&samples)?;

    let sf = s as f64;
    let log2x = |x: u64| (x as f64).log2();
    let fitted_c =
        |slope: f64| samples.iter().map(|p| p.log2_q - slope * log2x(p.x)).sum::<f64>() / samples.len() as f64;
    let c_claim1 = fitted_c(sf - 1.0);
    let c_claim2 = fitted_c(sf);
    let in_band = |sample: &DenominatorSample, c: f64, slope: f64| {
        let residual = (sample.log2_q - c - slope * log2x(sample.x)) / log2x(sample.x);
        residual >= -config.epsilon - config.band && residual <= config.band
    };

    let square = beta_value(s, precision)?.square();
    let mut rows = Vec::with_capacity(grid.len());
    let mut constants: Option<(f64, f64)> = None;
    for (sum, sample) in sums.iter().zip(&samples) {
        if grid.binary_search(&sum.x).is_err() {
            continue;
        }
        let diff = square.sub_rational(&sum.value);
        if diff.contains_zero() {
            return Err(Error::PrecisionExhausted(format!(
                "gap at x = {} is not separated from 0",
                sum.x
            )));
        }
        let gap = diff.abs();
        let (g_lo, g_hi) = gap
            .log2_bounds()
            .ok_or_else(|| Error::PrecisionExhausted(format!("gap at x = {} has no log bound", sum.x)))?;
        let tail = tail_bound(s, sum.x)?;
        let lq = sample.log2_q;
        // log2 q_x is known to about 1e-15 relative; the padding covers it.
        let q_iv = (lq, lq);
        let calibration = constants.is_none();
        let (c3, c5) = *constants.get_or_insert_with(|| {
            let g_mid = 0.5 * (g_lo + g_hi);
            (g_mid + lq, g_mid + (sf - config.epsilon) * lq)
        });
        let lower = (c3 - q_iv.1, c3 - q_iv.0);
        let upper_exp = sf - config.epsilon;
        let upper = (c5 - upper_exp * q_iv.1, c5 - upper_exp * q_iv.0);
        let (lower_ok, upper_ok) = if calibration {
            (Truth::True, Truth::True)
        } else {
            (le_bounds(lower, (g_lo, g_hi)), le_bounds((g_lo, g_hi), upper))
        };
        rows.push(AuditRow {
            x: sum.x,
            q_bits: sum.q_bits,
            log2_q: lq,
            q_over_x_exponent: lq / log2x(sum.x),
            tail_upper: tail.clone(),
            log2_gap_lower: g_lo,
            log2_gap_upper: g_hi,
            gap_le_tail: gap.le_rational(&tail),
            lemma15_claim1_ok: in_band(sample, c_claim1, sf - 1.0),
            lemma15_claim2_ok: in_band(sample, c_claim2, sf),
            calibration,
            sandwich_lower_ok: lower_ok,
            sandwich_upper_ok: upper_ok,
            eq24_lower_le_upper: if calibration {
                Truth::True
            } else {
                le_bounds(lower, upper)
            },
        });
    }
    let (log2_c3, log2_c5) = constants.expect("grid is nonempty");
    let hypothesis_flags = HypothesisFlags {
        lemma15_claim1: rows.iter().all(|r| r.lemma15_claim1_ok),
        lemma15_claim2: rows.iter().any(|r| r.lemma15_claim2_ok),
        eq22_qx_le_cx: fit.fitted_exponent <= 1.0 + config.band,
        eq24_sandwich_satisfiable: rows
            .iter()
            .all(|r| r.sandwich_lower_ok.is_true() && r.sandwich_upper_ok.is_true() && r.eq24_lower_le_upper.is_true()),
    };
    Ok(AuditReport {
        s,
        precision_bits: precision.bits(),
        epsilon: config.epsilon,
        band: config.band,
        rows,
        fit_samples: samples,
        fitted_exponent: fit.fitted_exponent,
        intercept: fit.intercept,
        r2: fit.r2,
        log2_c3,
        log2_c5,
        hypothesis_flags,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::conv_partial_exact;

    #[test]
    fn midpoints_fill_short_grids() {
        assert_eq!(
            fit_points(&[99, 999, 9999, 99999]).unwrap(),
            [99, 314, 999, 3161, 9999, 31621, 99999]
        );
        assert_eq!(fit_points(&[10, 20, 30, 40, 50]).unwrap().len(), 5);
        assert!(fit_points(&[16, 17, 18]).is_err());
    }

    #[test]
    fn small_audit() {
        let p = Precision::new(256).unwrap();
        let grid = [20u64, 40, 80, 160, 320];
        let report = eq24_audit(2, &grid, p, &AuditConfig::default()).unwrap();
        assert_eq!(report.rows.len(), 5);
        assert_eq!(report.fit_samples.len(), 5);
        for row in &report.rows {
            let exact = conv_partial_exact(2, row.x).unwrap();
            assert_eq!(row.q_bits, exact.q_bits);
            assert_eq!(row.q_bits, exact.value.denom().bits());
            assert_eq!(row.gap_le_tail, Truth::True);
        }
        assert!(report.rows[0].calibration && !report.rows[1].calibration);
        // Denominators grow far faster than any fixed power of x.
        assert!(report.fitted_exponent > 2.0);
        assert!(!report.hypothesis_flags.eq22_qx_le_cx);
        assert!(!report.hypothesis_flags.lemma15_claim1);
    }

    #[test]
    fn bad_grids() {
        let p = Precision::new(128).unwrap();
        let cfg = AuditConfig::default();
        assert!(eq24_audit(2, &[100, 200], p, &cfg).is_err());
        assert!(eq24_audit(2, &[100, 50, 200], p, &cfg).is_err());
        assert!(eq24_audit(2, &[10, 50, 200], p, &cfg).is_err());
        let capped = AuditConfig { cap: 100, ..cfg };
        assert!(matches!(
            eq24_audit(2, &[20, 50, 200], p, &capped),
            Err(Error::ResourceCap { .. })
        ));
    }
}
