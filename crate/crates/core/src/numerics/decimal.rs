use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use super::{BallReal, Rational};
use crate::error::{Error, Result};

/// Decimal rendering of a ball midpoint together with the number of
/// fraction digits that every point of the ball rounds to identically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecimalRendering {
    pub text: String,
    pub certified: usize,
}

/// Values at or above this magnitude are printed in `e` notation.
const SCIENTIFIC_THRESHOLD: u64 = 1_000_000_000_000_000;

fn pow10(k: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(10u32), k.unsigned_abs() as usize);
    if k >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::from(1), p).expect("nonzero")
    }
}

/// `round(v * 10^shift)`, ties away from zero.
fn round_scaled(v: &Rational, shift: i64) -> BigInt {
    let scaled = v * &pow10(shift);
    let (q, r) = scaled.numer().abs().div_rem(scaled.denom());
    let mut q = q;
    if (r * 2u32) >= *scaled.denom() {
        q += 1u32;
    }
    if scaled.is_negative() {
        -q
    } else {
        q
    }
}

/// Exponent `e` with `10^e <= |v| < 10^(e+1)`, for `v != 0`.
fn decimal_exponent(v: &Rational) -> i64 {
    let a = v.abs();
    let mut e = (a.to_f64().log10().floor()) as i64;
    while pow10(e) > a {
        e -= 1;
    }
    while pow10(e + 1) <= a {
        e += 1;
    }
    e
}

fn format_fixed(n: &BigInt, digits: usize) -> String {
    let sign = if n.is_negative() { "-" } else { "" };
    let mut s = n.abs().to_string();
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{sign}{int}.{frac}")
}

/// Renders `x` with `n` fraction digits and reports how many of them are
/// certified by the radius.
///
/// The certified count `k` is the largest `k <= n` for which both ends of
/// the ball round to the same `k`-digit value. Magnitudes of `10^15` and
/// above use `e` notation, in which case digits count mantissa places.
pub fn decimal_digits(x: &BallReal, n: usize) -> Result<DecimalRendering> {
    if n == 0 {
        return Err(Error::Domain("digit count must be at least 1".into()));
    }
    let mid = x.midpoint();
    let threshold = Rational::from_integer(SCIENTIFIC_THRESHOLD);
    let exponent = if mid.abs() >= threshold {
        decimal_exponent(&mid)
    } else {
        0
    };

    let text = if exponent == 0 {
        format_fixed(&round_scaled(&mid, n as i64), n)
    } else {
        let mut e = exponent;
        let mut m = round_scaled(&mid, n as i64 - e);
        // Rounding 9.99..9 can carry into a new leading digit.
        if m.abs().to_string().len() > n + 1 {
            e += 1;
            m = round_scaled(&mid, n as i64 - e);
        }
        format!("{}e{}", format_fixed(&m, n), e)
    };

    let lo = x.lower();
    let hi = x.upper();
    let certified = (0..=n)
        .rev()
        .find(|&k| {
            let shift = k as i64 - exponent;
            round_scaled(&lo, shift) == round_scaled(&hi, shift)
        })
        .unwrap_or(0);
    Ok(DecimalRendering { text, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{make_rational, Precision};
    use num_bigint::BigUint;

    fn ball(value: &Rational, radius: &Rational) -> BallReal {
        BallReal::from_interval(&(value - radius), &(value + radius), Precision::new(128).unwrap()).unwrap()
    }

    #[test]
    fn exact_half() {
        let eps = Rational::new(BigInt::from(1), num_traits::pow(BigInt::from(10), 20)).unwrap();
        let b = ball(&make_rational(1, 2).unwrap(), &eps);
        let d = decimal_digits(&b, 3).unwrap();
        assert_eq!(d.text, "0.500");
        assert_eq!(d.certified, 3);
    }

    #[test]
    fn spanning_ball_certifies_nothing() {
        let b = ball(&Rational::one(), &make_rational(3, 5).unwrap());
        let d = decimal_digits(&b, 2).unwrap();
        assert_eq!(d.text, "1.00");
        assert_eq!(d.certified, 0);
    }

    #[test]
    fn negative_and_small_values() {
        let b = BallReal::from_rational(&make_rational(-1, 8).unwrap(), Precision::new(64).unwrap());
        let d = decimal_digits(&b, 4).unwrap();
        assert_eq!(d.text, "-0.1250");
        assert_eq!(d.certified, 4);
        let b = BallReal::from_rational(&make_rational(3, 1000).unwrap(), Precision::new(64).unwrap());
        assert_eq!(decimal_digits(&b, 2).unwrap().text, "0.00");
    }

    #[test]
    fn scientific_above_threshold() {
        let big = Rational::from_integer(BigInt::from(12_345_678_901_234_567u64));
        let b = BallReal::from_rational(&big, Precision::new(64).unwrap());
        let d = decimal_digits(&b, 3).unwrap();
        assert_eq!(d.text, "1.235e16");
        let nines = Rational::from_integer(BigInt::from(9_999_999_999_999_999u64));
        let b = BallReal::from_rational(&nines, Precision::new(64).unwrap());
        assert_eq!(decimal_digits(&b, 2).unwrap().text, "1.00e16");
        let below = Rational::from_integer(BigInt::from(999_999_999_999_999u64));
        let b = BallReal::from_rational(&below, Precision::new(64).unwrap());
        assert_eq!(decimal_digits(&b, 1).unwrap().text, "999999999999999.0");
    }

    #[test]
    fn zero_digits_is_domain_error() {
        let b = BallReal::from_raw(BigInt::from(1), BigUint::from(0u32), Precision::new(64).unwrap());
        assert!(decimal_digits(&b, 0).is_err());
    }
}
