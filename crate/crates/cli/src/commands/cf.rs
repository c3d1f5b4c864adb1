use clap::{Args, Subcommand};
use diophant_core::contfrac::{
    cf_statistics, classify, expand, from_rational, levy_constant, CfClassification, CfKind, ContinuedFraction,
    Termination, KHINCHIN_CONSTANT,
};
use diophant_core::numerics::{Precision, Rational};
use diophant_core::Error;
use serde::Serialize;

use crate::error::CliError;
use crate::report::{float, Report, Table};
use crate::source::{resolve, SourceArgs, Target};
use crate::RunConfig;

/// Largest term count accepted.
pub const MAX_TERMS: usize = 1_000_000;

#[derive(Subcommand, Debug)]
pub enum CfCommand {
    /// Partial quotients `[a0; a1, ...]`.
    Expand(TermsArgs),
    /// Khinchin geometric mean and Levy slope of the first `--terms` quotients.
    Stats(TermsArgs),
    /// Rational, eventually periodic or unresolved, from Gauss-map iterates.
    Classify(ClassifyArgs),
}

#[derive(Args, Debug)]
pub struct TermsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 20)]
    pub terms: usize,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Number of Gauss iterates to examine.
    #[arg(long, default_value_t = 40)]
    pub terms: usize,
    /// Stop once an iterate's radius exceeds this.
    #[arg(long, default_value = "1/1000000")]
    pub tolerance: String,
}

pub fn check_terms(terms: usize) -> Result<(), CliError> {
    if terms == 0 {
        return Err(CliError::Usage("--terms must be at least 1".into()));
    }
    if terms > MAX_TERMS {
        return Err(Error::ResourceCap {
            what: "continued-fraction terms",
            requested: terms as u64,
            cap: MAX_TERMS as u64,
        }
        .into());
    }
    Ok(())
}

/// Up to `terms` terms (`a0` included). A rational is expanded exactly; a
/// ball stops where its quotients are no longer certified.
pub fn expansion(target: &Target, terms: usize) -> Result<ContinuedFraction, CliError> {
    match target {
        Target::Exact(r) => {
            let cf = from_rational(r);
            if cf.len() <= terms {
                return Ok(cf);
            }
            let quotients = cf.quotients()[..terms - 1].to_vec();
            Ok(ContinuedFraction::new(cf.a0().clone(), quotients, Termination::Capped)?)
        }
        Target::Ball(b) => Ok(expand(b, terms)?),
    }
}

/// As [`expansion`], but a ball that certifies fewer than `terms` terms is a
/// precision failure.
pub fn full_expansion(target: &Target, terms: usize, precision: Precision) -> Result<ContinuedFraction, CliError> {
    let cf = expansion(target, terms)?;
    if cf.len() < terms && !cf.is_terminated() {
        return Err(Error::PrecisionExhausted(format!(
            "only {} of {terms} terms certified at {} bits; raise --precision",
            cf.len(),
            precision.bits()
        ))
        .into());
    }
    Ok(cf)
}

#[derive(Serialize)]
struct ExpandReport<'a> {
    source: &'a str,
    precision_bits: u32,
    terms: Vec<serde_json::Number>,
    terminated: bool,
}

#[derive(Serialize)]
struct StatsReport<'a> {
    source: &'a str,
    precision_bits: u32,
    n: usize,
    khinchine_mean: f64,
    levy_slope: f64,
    khinchin_constant: f64,
    levy_constant: f64,
}

#[derive(Serialize)]
struct ClassifyReport<'a> {
    source: &'a str,
    precision_bits: u32,
    #[serde(flatten)]
    classification: CfClassification,
}

pub fn run(cmd: &CfCommand, config: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        CfCommand::Expand(args) => {
            check_terms(args.terms)?;
            let target = resolve(&args.source, config.precision, config.seed)?;
            let cf = expansion(&target, args.terms)?;
            let strings = cf.terms_as_strings();
            let mut table = Table::new(&["index", "term"]);
            for (i, t) in strings.iter().enumerate() {
                table.push(vec![i.to_string(), t.clone()]);
            }
            let terms = strings
                .iter()
                .map(|t| t.parse::<serde_json::Number>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| CliError::Output(e.to_string()))?;
            let report = ExpandReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                terms,
                terminated: cf.is_terminated(),
            };
            Ok(Report::new(&report, table, cf.to_string())?.text_by_default())
        }
        CfCommand::Stats(args) => {
            check_terms(args.terms)?;
            if args.terms < 2 {
                return Err(CliError::Usage("cf stats needs --terms >= 2".into()));
            }
            let target = resolve(&args.source, config.precision, config.seed)?;
            let cf = full_expansion(&target, args.terms + 1, config.precision)?;
            let stats = cf_statistics(&cf, args.terms)?;
            let report = StatsReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                n: stats.n,
                khinchine_mean: stats.khinchine_mean,
                levy_slope: stats.levy_slope,
                khinchin_constant: KHINCHIN_CONSTANT,
                levy_constant: levy_constant(),
            };
            let mut table = Table::new(&["source", "n", "khinchine_mean", "levy_slope"]);
            table.push(vec![
                args.source.source.clone(),
                stats.n.to_string(),
                float(stats.khinchine_mean),
                float(stats.levy_slope),
            ]);
            let text = format!(
                "n = {}\nkhinchine_mean = {} (limit {})\nlevy_slope = {} (limit {})",
                stats.n,
                float(stats.khinchine_mean),
                float(KHINCHIN_CONSTANT),
                float(stats.levy_slope),
                float(levy_constant())
            );
            Report::new(&report, table, text)
        }
        CfCommand::Classify(args) => {
            let tolerance: Rational = args
                .tolerance
                .parse()
                .map_err(|_| CliError::Usage(format!("tolerance {:?} is not a number", args.tolerance)))?;
            let target = resolve(&args.source, config.precision, config.seed)?;
            // An exact literal is rational by construction; its Euclidean
            // expansion stands in for the iterates.
            let result = match &target {
                Target::Exact(r) => CfClassification {
                    kind: CfKind::Rational,
                    evidence: from_rational(r).len(),
                },
                Target::Ball(b) => classify(b, args.terms, &tolerance)?,
            };
            let (kind, preperiod, period) = match result.kind {
                CfKind::Rational => ("rational", None, None),
                CfKind::Periodic { preperiod, period } => ("periodic", Some(preperiod), Some(period)),
                CfKind::Unresolved => ("unresolved", None, None),
            };
            let opt = |v: Option<usize>| v.map(|x| x.to_string()).unwrap_or_default();
            let mut table = Table::new(&["source", "kind", "preperiod", "period", "evidence"]);
            table.push(vec![
                args.source.source.clone(),
                kind.to_string(),
                opt(preperiod),
                opt(period),
                result.evidence.to_string(),
            ]);
            let text = match (preperiod, period) {
                (Some(pre), Some(per)) => {
                    format!("{kind} (preperiod {pre}, period {per}; {} iterates)", result.evidence)
                }
                _ => format!("{kind} ({} iterates)", result.evidence),
            };
            let report = ClassifyReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                classification: result,
            };
            Report::new(&report, table, text)
        }
    }
}
