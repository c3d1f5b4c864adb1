use clap::{Args, Subcommand, ValueEnum};
use diophant_core::contfrac::{convergents, from_rational, Convergent};
use diophant_core::diagnostics::{
    approximation_quality, is_self_approximation, mu_estimate, roth_count, RothCensus, RothVariant,
};
use diophant_core::numerics::Truth;
use serde::Serialize;

use super::cf::{check_terms, expansion, full_expansion};
use crate::error::CliError;
use crate::report::{float, Report, Table};
use crate::source::{resolve, SourceArgs, Target};
use crate::RunConfig;

#[derive(Subcommand, Debug)]
pub enum DiagCommand {
    /// Gap, Dirichlet and Hurwitz flags for each convergent.
    Quality(DiagArgs),
    /// Finite-window irrationality-measure estimate.
    Mu(DiagArgs),
    /// Count convergents inside the Roth (or Lange) region.
    Roth(RothArgs),
}

#[derive(Args, Debug)]
pub struct DiagArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Variant {
    Roth,
    Lange,
}

#[derive(Args, Debug)]
pub struct RothArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, value_enum, default_value_t = Variant::Roth)]
    pub variant: Variant,
}

#[derive(Serialize)]
struct QualityRow {
    index: usize,
    p: String,
    q: String,
    /// Midpoint of the certified `log2 |xi - p/q|`; absent for an exact hit.
    log2_gap: Option<f64>,
    scaled_gap: f64,
    dirichlet_ok: Truth,
    hurwitz_ok: Truth,
}

#[derive(Serialize)]
struct QualityReport<'a> {
    source: &'a str,
    precision_bits: u32,
    rows: Vec<QualityRow>,
    /// Every two consecutive convergents include one certified Dirichlet pass.
    dirichlet_every_pair: bool,
    /// Every three consecutive convergents include one certified Hurwitz pass.
    hurwitz_every_triple: bool,
}

#[derive(Serialize)]
struct MuReport<'a> {
    source: &'a str,
    precision_bits: u32,
    n: usize,
    mu_estimate: f64,
}

#[derive(Serialize)]
struct RothReport<'a> {
    source: &'a str,
    precision_bits: u32,
    #[serde(flatten)]
    census: RothCensus,
}

fn every_window(flags: &[Truth], width: usize) -> bool {
    flags.len() < width || flags.windows(width).all(|w| w.iter().any(|t| t.is_true()))
}

/// The first `terms` convergents, expanding a little further so the last
/// ones are still separated from the target.
fn leading_convergents(target: &Target, terms: usize, config: &RunConfig) -> Result<Vec<Convergent>, CliError> {
    let cf = expansion(target, terms + 2)?;
    if cf.len() < terms && !cf.is_terminated() {
        return Err(diophant_core::Error::PrecisionExhausted(format!(
            "only {} of {terms} terms certified at {} bits; raise --precision",
            cf.len(),
            config.precision.bits()
        ))
        .into());
    }
    Ok(convergents(&cf, terms.min(cf.len())).items)
}

pub fn run(cmd: &DiagCommand, config: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        DiagCommand::Quality(args) => {
            check_terms(args.terms)?;
            let target = resolve(&args.source, config.precision, config.seed)?;
            let ball = target.ball(config.precision);
            let mut list = leading_convergents(&target, args.terms, config)?;
            if let Target::Exact(r) = &target {
                list.retain(|c| !is_self_approximation(r, c));
            }
            let mut rows = Vec::with_capacity(list.len());
            let mut table = Table::new(&[
                "index",
                "p",
                "q",
                "log2_gap",
                "scaled_gap",
                "dirichlet_ok",
                "hurwitz_ok",
            ]);
            for c in &list {
                let quality = approximation_quality(&ball, c)?;
                let log2_gap = quality.gap.log2_bounds().map(|(lo, hi)| 0.5 * (lo + hi));
                let row = QualityRow {
                    index: c.index,
                    p: c.p.to_string(),
                    q: c.q.to_string(),
                    log2_gap,
                    scaled_gap: quality.scaled_gap(),
                    dirichlet_ok: quality.dirichlet_ok,
                    hurwitz_ok: quality.hurwitz_ok,
                };
                table.push(vec![
                    row.index.to_string(),
                    row.p.clone(),
                    row.q.clone(),
                    row.log2_gap.map(float).unwrap_or_default(),
                    float(row.scaled_gap),
                    row.dirichlet_ok.to_string(),
                    row.hurwitz_ok.to_string(),
                ]);
                rows.push(row);
            }
            let dirichlet: Vec<Truth> = rows.iter().map(|r| r.dirichlet_ok).collect();
            let hurwitz: Vec<Truth> = rows.iter().map(|r| r.hurwitz_ok).collect();
            let report = QualityReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                dirichlet_every_pair: every_window(&dirichlet, 2),
                hurwitz_every_triple: every_window(&hurwitz, 3),
                rows,
            };
            let mut text = String::new();
            for r in &report.rows {
                text.push_str(&format!(
                    "{:>4}  {}/{}  q^2 gap = {}  dirichlet {}  hurwitz {}\n",
                    r.index,
                    r.p,
                    r.q,
                    float(r.scaled_gap),
                    r.dirichlet_ok,
                    r.hurwitz_ok
                ));
            }
            text.push_str(&format!(
                "dirichlet in every pair: {}\nhurwitz in every triple: {}",
                report.dirichlet_every_pair, report.hurwitz_every_triple
            ));
            Report::new(&report, table, text)
        }
        DiagCommand::Mu(args) => {
            check_terms(args.terms)?;
            let target = resolve(&args.source, config.precision, config.seed)?;
            let cf = match &target {
                Target::Exact(r) => from_rational(r),
                Target::Ball(_) => full_expansion(&target, args.terms + 1, config.precision)?,
            };
            let mu = mu_estimate(&cf, args.terms)?;
            let report = MuReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                n: args.terms,
                mu_estimate: mu,
            };
            let mut table = Table::new(&["source", "n", "mu_estimate"]);
            table.push(vec![args.source.source.clone(), args.terms.to_string(), float(mu)]);
            Report::new(&report, table, format!("mu_estimate({}) = {}", args.terms, float(mu)))
        }
        DiagCommand::Roth(args) => {
            check_terms(args.terms)?;
            let target = resolve(&args.source, config.precision, config.seed)?;
            let ball = target.ball(config.precision);
            let mut list = leading_convergents(&target, args.terms, config)?;
            if let Target::Exact(r) = &target {
                list.retain(|c| !is_self_approximation(r, c));
            }
            let variant = match args.variant {
                Variant::Roth => RothVariant::Roth,
                Variant::Lange => RothVariant::Lange,
            };
            let census = roth_count(&ball, &list, args.epsilon, variant)?;
            let mut table = Table::new(&[
                "index",
                "q_bits",
                "log2_gap_lower",
                "log2_gap_upper",
                "log2_threshold",
                "satisfied",
            ]);
            for row in &census.rows {
                let (lo, hi) = row.log2_gap.map(|(a, b)| (float(a), float(b))).unwrap_or_default();
                table.push(vec![
                    row.index.to_string(),
                    row.q_bits.to_string(),
                    lo,
                    hi,
                    row.log2_threshold.map(float).unwrap_or_default(),
                    row.satisfied.to_string(),
                ]);
            }
            let text = format!(
                "epsilon = {}\nsatisfied = {}\nfailed = {}\nundecidable = {}",
                float(census.epsilon),
                census.satisfied,
                census.failed,
                census.undecidable
            );
            let report = RothReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                census,
            };
            Report::new(&report, table, text)
        }
    }
}
