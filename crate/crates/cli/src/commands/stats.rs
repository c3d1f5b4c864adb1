use clap::{Args, Subcommand};
use diophant_core::lseries::divisor_count;
use diophant_core::stats::{coincidence_density, convergent_factor_stats, divisor_sieve, hyperbola_sum, FactorRecord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::cf::{check_terms, full_expansion};
use crate::error::CliError;
use crate::report::{float, Report, Table};
use crate::source::{resolve, SourceArgs};
use crate::RunConfig;

#[derive(Subcommand, Debug)]
pub enum StatsCommand {
    /// Divisor counts up to `--limit`, checked against the hyperbola sum and
    /// seeded trial-division samples.
    Sieve(SieveArgs),
    /// Density of `{n : d(4n+1) = d(4n+3)}` at checkpoints up to `--limit`.
    Density(DensityArgs),
    /// Largest prime factor and squarefree kernel of convergent denominators.
    Factors(FactorArgs),
}

#[derive(Args, Debug)]
pub struct SieveArgs {
    #[arg(long)]
    pub limit: usize,
    /// Random `n <= limit` to recheck by trial division.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    /// How many leading counts to include in the report.
    #[arg(long, default_value_t = 20)]
    pub head: usize,
}

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[arg(long)]
    pub limit: u64,
    /// Checkpoints below the limit; powers of ten by default.
    #[arg(long, value_delimiter = ',')]
    pub grid: Option<Vec<u64>>,
}

#[derive(Args, Debug)]
pub struct FactorArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, default_value_t = 30)]
    pub terms: usize,
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
}

#[derive(Serialize)]
struct SieveReport {
    limit: usize,
    divisor_sum: u64,
    hyperbola_sum: u64,
    checksum_ok: bool,
    seed: u64,
    samples: usize,
    mismatches: Vec<u64>,
    head: Vec<u32>,
}

#[derive(Serialize)]
struct DensityRow {
    limit: u64,
    hits: u64,
    density: String,
    density_float64: f64,
}

#[derive(Serialize)]
struct DensityReport {
    limit: u64,
    points: Vec<DensityRow>,
    first_members: Vec<u64>,
}

#[derive(Serialize)]
struct FactorReport<'a> {
    source: &'a str,
    precision_bits: u32,
    delta: f64,
    records: Vec<FactorRecord>,
}

fn powers_of_ten_below(limit: u64) -> Vec<u64> {
    std::iter::successors(Some(10u64), |p| p.checked_mul(10))
        .take_while(|&p| p < limit)
        .collect()
}

pub fn run(cmd: &StatsCommand, config: &RunConfig) -> Result<Report, CliError> {
    match cmd {
        StatsCommand::Sieve(args) => {
            let table = divisor_sieve(args.limit)?;
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mismatches: Vec<u64> = (0..args.samples)
                .map(|_| rng.gen_range(1..=args.limit as u64))
                .filter(|&n| table.get(n as usize) as u64 != divisor_count(n))
                .collect();
            let head: Vec<u32> = table.counts().iter().take(args.head).map(|&c| c as u32).collect();
            let report = SieveReport {
                limit: args.limit,
                divisor_sum: table.divisor_sum(),
                hyperbola_sum: hyperbola_sum(args.limit as u64),
                checksum_ok: table.divisor_sum() == hyperbola_sum(args.limit as u64),
                seed: config.seed,
                samples: args.samples,
                mismatches,
                head,
            };
            let mut csv = Table::new(&["n", "d"]);
            for (i, d) in report.head.iter().enumerate() {
                csv.push(vec![(i + 1).to_string(), d.to_string()]);
            }
            let text = format!(
                "sum of d(n) for n <= {} = {} (hyperbola {}; {})\n{} seeded samples, {} mismatches",
                report.limit,
                report.divisor_sum,
                report.hyperbola_sum,
                if report.checksum_ok { "match" } else { "MISMATCH" },
                report.samples,
                report.mismatches.len()
            );
            Report::new(&report, csv, text)
        }
        StatsCommand::Density(args) => {
            let grid = args.grid.clone().unwrap_or_else(|| powers_of_ten_below(args.limit));
            let result = coincidence_density(args.limit, &grid)?;
            let points: Vec<DensityRow> = result
                .points
                .iter()
                .map(|p| DensityRow {
                    limit: p.limit,
                    hits: p.hits,
                    density: p.density.to_string(),
                    density_float64: p.density.to_f64(),
                })
                .collect();
            let mut table = Table::new(&["limit", "hits", "density", "density_float64"]);
            let mut text = String::new();
            for p in &points {
                table.push(vec![
                    p.limit.to_string(),
                    p.hits.to_string(),
                    p.density.clone(),
                    float(p.density_float64),
                ]);
                text.push_str(&format!(
                    "{:>12} {:>12} {}\n",
                    p.limit,
                    p.hits,
                    float(p.density_float64)
                ));
            }
            let members: Vec<String> = result.first_members.iter().map(|n| n.to_string()).collect();
            text.push_str(&format!("first members: {}", members.join(", ")));
            let report = DensityReport {
                limit: args.limit,
                points,
                first_members: result.first_members,
            };
            Report::new(&report, table, text)
        }
        StatsCommand::Factors(args) => {
            check_terms(args.terms)?;
            let target = resolve(&args.source, config.precision, config.seed)?;
            let cf = full_expansion(&target, args.terms, config.precision)?;
            let records = convergent_factor_stats(&cf, args.terms, args.delta)?;
            let opt = |v: &Option<String>| v.clone().unwrap_or_default();
            let flag = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
            let mut table = Table::new(&[
                "k",
                "q",
                "largest_prime",
                "kernel",
                "lemma3_1_ok",
                "lemma3_2_ok",
                "factored",
                "primality_certified",
            ]);
            let mut text = String::new();
            for r in &records {
                table.push(vec![
                    r.k.to_string(),
                    r.q.clone(),
                    opt(&r.largest_prime),
                    opt(&r.kernel),
                    flag(r.lemma3_1_ok),
                    flag(r.lemma3_2_ok),
                    r.factored.to_string(),
                    r.primality_certified.to_string(),
                ]);
                text.push_str(&format!(
                    "{:>4}  q = {}  P = {}  Q = {}\n",
                    r.k,
                    r.q,
                    r.largest_prime.as_deref().unwrap_or("?"),
                    r.kernel.as_deref().unwrap_or("?")
                ));
            }
            let report = FactorReport {
                source: &args.source.source,
                precision_bits: config.precision.bits(),
                delta: args.delta,
                records,
            };
            Report::new(&report, table, text)
        }
    }
}
