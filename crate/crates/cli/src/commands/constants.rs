use clap::Args;
use diophant_core::constants::{constant, pi, REGISTRY};
use diophant_core::lseries::{beta_value, closed_form, zeta_value, ClosedForm, ClosedFormKind};
use diophant_core::numerics::{decimal_digits, BallReal, DecimalRendering, Precision};
use diophant_core::Error;
use serde::Serialize;

use crate::error::CliError;
use crate::report::{Report, Table};
use crate::RunConfig;

/// Largest digit count accepted.
pub const MAX_DIGITS: usize = 100_000;

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    /// A registry constant, `beta` or `zeta` (with --s), or the closed forms
    /// `zeta-even` and `beta-odd` (with --n).
    pub name: String,
    /// Fraction digits to print.
    #[arg(long, default_value_t = 30)]
    pub digits: usize,
    /// Exponent for `beta` and `zeta`.
    #[arg(long)]
    pub s: Option<u32>,
    /// Index for `zeta-even` (zeta(2n)) and `beta-odd` (L(2n+1, chi)).
    #[arg(long)]
    pub n: Option<u32>,
}

#[derive(Serialize)]
struct ConstantReport<'a> {
    name: &'a str,
    s: Option<u32>,
    n: Option<u32>,
    digits: usize,
    value: String,
    certified_digits: usize,
    precision_bits: u32,
    closed_form: Option<ClosedForm>,
}

fn require(value: Option<u32>, flag: &str, name: &str) -> Result<u32, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("`{name}` needs --{flag}")))
}

fn evaluate(args: &ConstantsArgs, precision: Precision) -> Result<(BallReal, Option<ClosedForm>), CliError> {
    let name = args.name.as_str();
    let kind = match name {
        "beta" => return Ok((beta_value(require(args.s, "s", name)?, precision)?, None)),
        "zeta" => return Ok((zeta_value(require(args.s, "s", name)?, precision)?, None)),
        "zeta-even" => ClosedFormKind::ZetaEven,
        "beta-odd" => ClosedFormKind::BetaOdd,
        _ => {
            return match constant(name, precision) {
                Ok(ball) => Ok((ball, None)),
                Err(Error::Domain(_)) => Err(CliError::Usage(format!(
                    "unknown constant '{name}'; known: {}, plus beta, zeta, zeta-even, beta-odd",
                    REGISTRY.join(", ")
                ))),
                Err(e) => Err(e.into()),
            };
        }
    };
    let form = closed_form(kind, require(args.n, "n", name)?)?;
    let guard = Precision::new(precision.bits() + 32)?;
    let value = pi(guard)
        .pow(form.pi_power)
        .mul_rational(&form.coefficient)
        .with_precision(precision);
    Ok((value, Some(form)))
}

pub fn run(args: &ConstantsArgs, config: &RunConfig) -> Result<Report, CliError> {
    if args.digits == 0 {
        return Err(CliError::Usage("--digits must be at least 1".into()));
    }
    if args.digits > MAX_DIGITS {
        return Err(Error::ResourceCap {
            what: "decimal digits",
            requested: args.digits as u64,
            cap: MAX_DIGITS as u64,
        }
        .into());
    }
    let mut precision = config.precision.max(Precision::for_decimal_digits(args.digits as u32));
    // A value sitting next to a rounding boundary needs more bits; give up
    // after a few doublings.
    let mut attempt = 0;
    let (rendering, form): (DecimalRendering, Option<ClosedForm>) = loop {
        let (ball, form) = evaluate(args, precision)?;
        let rendering = decimal_digits(&ball, args.digits)?;
        if rendering.certified >= args.digits {
            break (rendering, form);
        }
        attempt += 1;
        if attempt > 3 {
            return Err(Error::PrecisionExhausted(format!(
                "only {} of {} digits certified at {} bits",
                rendering.certified,
                args.digits,
                precision.bits()
            ))
            .into());
        }
        precision = Precision::new(precision.bits() * 2)?;
    };

    let mut table = Table::new(&["name", "digits", "value", "certified_digits", "precision_bits"]);
    table.push(vec![
        args.name.clone(),
        args.digits.to_string(),
        rendering.text.clone(),
        rendering.certified.to_string(),
        precision.bits().to_string(),
    ]);
    let text = rendering.text.clone();
    let report = ConstantReport {
        name: &args.name,
        s: args.s,
        n: args.n,
        digits: args.digits,
        value: rendering.text,
        certified_digits: rendering.certified,
        precision_bits: precision.bits(),
        closed_form: form,
    };
    Ok(Report::new(&report, table, text)?.text_by_default())
}
