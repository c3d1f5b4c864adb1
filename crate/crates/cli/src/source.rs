use clap::Args;
use diophant_core::constants::constant;
use diophant_core::numerics::{BallReal, Precision, Rational};
use diophant_core::Error;
use num_bigint::{BigInt, BigUint, Sign};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    /// A registry constant, a fraction `p/q`, a decimal literal, or `random`
    /// (a seeded dyadic real in [0, 1) at the working precision).
    pub source: String,
    /// Half-width of the interval around a decimal or fraction literal.
    #[arg(long)]
    pub radius: Option<String>,
}

/// A parsed source: exact rationals stay exact, everything else is a ball.
pub enum Target {
    Exact(Rational),
    Ball(BallReal),
}

impl Target {
    pub fn ball(&self, precision: Precision) -> BallReal {
        match self {
            Target::Exact(r) => BallReal::from_rational(r, precision),
            Target::Ball(b) => b.clone(),
        }
    }
}

/// The `index`-th seeded random real: a uniform `bits`-bit dyadic in
/// `[0, 1)` with a one-ulp radius.
pub fn random_ball(seed: u64, index: u64, precision: Precision) -> BallReal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let bits = precision.bits() as usize;
    let mut bytes = vec![0u8; bits.div_ceil(8)];
    rng.fill_bytes(&mut bytes);
    let mut mid = BigUint::from_bytes_le(&bytes);
    let excess = bytes.len() * 8 - bits;
    mid >>= excess;
    BallReal::from_raw(BigInt::from_biguint(Sign::Plus, mid), BigUint::from(1u32), precision)
}

pub fn resolve(args: &SourceArgs, precision: Precision, seed: u64) -> Result<Target, CliError> {
    let spec = args.source.trim();
    if spec == "random" {
        if args.radius.is_some() {
            return Err(CliError::Usage("--radius applies only to numeric literals".into()));
        }
        return Ok(Target::Ball(random_ball(seed, 0, precision)));
    }
    let literal = spec.parse::<Rational>().ok();
    match (literal, &args.radius) {
        (Some(r), None) => Ok(Target::Exact(r)),
        (Some(r), Some(radius)) => {
            let rad: Rational = radius
                .parse()
                .map_err(|_| CliError::Usage(format!("radius {radius:?} is not a number")))?;
            if rad.is_negative() {
                return Err(CliError::Usage("radius must be nonnegative".into()));
            }
            let lo = &r - &rad;
            let hi = &r + &rad;
            Ok(Target::Ball(BallReal::from_interval(&lo, &hi, precision)?))
        }
        (None, Some(_)) => Err(CliError::Usage("--radius applies only to numeric literals".into())),
        (None, None) => match constant(spec, precision) {
            Ok(ball) => Ok(Target::Ball(ball)),
            Err(Error::Domain(msg)) => Err(CliError::Usage(msg)),
            Err(e) => Err(e.into()),
        },
    }
}
