//! Exact rationals and certified midpoint-radius reals.

mod ball;
mod decimal;
mod precision;
mod rational;

pub use ball::{BallReal, Truth};
pub use decimal::{decimal_digits, DecimalRendering};
pub use precision::Precision;
pub use rational::{make_rational, Rational};

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};

/// Natural logarithm of a positive big integer, accurate to about one part
/// in 10^15 regardless of its size.
pub fn ln_biguint(n: &BigUint) -> f64 {
    log2_biguint(n) * std::f64::consts::LN_2
}

/// Base-2 logarithm of a positive big integer. Returns `-inf` for zero.
pub fn log2_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map(|v| (v as f64).log2()).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(u64::MAX);
    (top as f64).log2() + shift as f64
}

/// Base-2 logarithm of `|n|`.
pub fn log2_bigint(n: &BigInt) -> f64 {
    log2_biguint(n.magnitude())
}
