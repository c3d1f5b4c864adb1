use clap::Args;
use diophant_core::diagnostics::{eq24_audit, AuditConfig};
use diophant_core::lseries::{conv_partial_exact_at, value_f64, DEFAULT_EXACT_CAP};
use serde::Serialize;

use crate::error::CliError;
use crate::report::{float, Report, Table};
use crate::RunConfig;

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    /// Strictly increasing cutoffs, at least three, each at least 16.
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<u64>,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    /// Allowed deviation of a residual exponent from its claimed range.
    #[arg(long, default_value_t = 0.15)]
    pub band: f64,
    /// Largest cutoff for the exact sums.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct PartialArgs {
    #[arg(long, default_value_t = 2)]
    pub s: u32,
    #[arg(long, value_delimiter = ',', required = true)]
    pub grid: Vec<u64>,
    /// Also print each exact value as `p/q`.
    #[arg(long)]
    pub exact: bool,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    pub cap: u64,
}

pub fn run(args: &AuditArgs, config: &RunConfig) -> Result<Report, CliError> {
    let audit_config = AuditConfig {
        epsilon: args.epsilon,
        band: args.band,
        cap: args.cap,
    };
    let report = eq24_audit(args.s, &args.grid, config.precision, &audit_config)?;
    let mut table = Table::new(&[
        "x",
        "q_bits",
        "log2_q",
        "q_over_x_exponent",
        "tail_upper",
        "log2_gap_lower",
        "log2_gap_upper",
        "gap_le_tail",
        "lemma15_claim1_ok",
        "lemma15_claim2_ok",
        "calibration",
        "sandwich_lower_ok",
        "sandwich_upper_ok",
        "eq24_lower_le_upper",
    ]);
    for r in &report.rows {
        table.push(vec![
            r.x.to_string(),
            r.q_bits.to_string(),
            float(r.log2_q),
            float(r.q_over_x_exponent),
            r.tail_upper.to_string(),
            float(r.log2_gap_lower),
            float(r.log2_gap_upper),
            r.gap_le_tail.to_string(),
            r.lemma15_claim1_ok.to_string(),
            r.lemma15_claim2_ok.to_string(),
            r.calibration.to_string(),
            r.sandwich_lower_ok.to_string(),
            r.sandwich_upper_ok.to_string(),
            r.eq24_lower_le_upper.to_string(),
        ]);
    }
    let flags = &report.hypothesis_flags;
    let mut text = format!(
        "s = {}, precision = {} bits, epsilon = {}, band = {}\n",
        report.s,
        report.precision_bits,
        float(report.epsilon),
        float(report.band)
    );
    for r in &report.rows {
        text.push_str(&format!(
            "x = {:>8}  q_bits = {:>8}  log2 q / log2 x = {:.4}  gap in 2^[{:.3}, {:.3}]  gap <= tail: {}\n",
            r.x, r.q_bits, r.q_over_x_exponent, r.log2_gap_lower, r.log2_gap_upper, r.gap_le_tail
        ));
    }
    text.push_str(&format!(
        "fitted exponent {:.4} (r2 {:.6}) over {} points\n",
        report.fitted_exponent,
        report.r2,
        report.fit_samples.len()
    ));
    text.push_str(&format!(
        "lemma15_claim1 {}\nlemma15_claim2 {}\neq22_qx_le_cx {}\neq24_sandwich_satisfiable {}",
        flags.lemma15_claim1, flags.lemma15_claim2, flags.eq22_qx_le_cx, flags.eq24_sandwich_satisfiable
    ));
    Report::new(&report, table, text)
}

#[derive(Serialize)]
struct PartialRow {
    s: u32,
    x: u64,
    p_decimal_digits: u64,
    q_bits: u64,
    value_float64: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<String>,
}

#[derive(Serialize)]
struct PartialReport {
    rows: Vec<PartialRow>,
}

pub fn run_partial(args: &PartialArgs) -> Result<Report, CliError> {
    let mut grid = args.grid.clone();
    grid.sort_unstable();
    grid.dedup();
    let sums = conv_partial_exact_at(args.s, &grid, args.cap)?;
    let mut header = vec!["s", "x", "p_decimal_digits", "q_bits", "value_float64"];
    if args.exact {
        header.push("value");
    }
    let mut table = Table::new(&header);
    let mut rows = Vec::with_capacity(sums.len());
    let mut text = String::new();
    for sum in &sums {
        let row = PartialRow {
            s: sum.s,
            x: sum.x,
            p_decimal_digits: sum.p_decimal_digits(),
            q_bits: sum.q_bits,
            value_float64: value_f64(sum),
            value: args.exact.then(|| sum.value.to_string()),
        };
        let mut cells = vec![
            row.s.to_string(),
            row.x.to_string(),
            row.p_decimal_digits.to_string(),
            row.q_bits.to_string(),
            float(row.value_float64),
        ];
        cells.extend(row.value.clone());
        text.push_str(&format!("{}\n", cells.join(" ")));
        table.push(cells);
        rows.push(row);
    }
    Report::new(&PartialReport { rows }, table, text)
}
