//! Named constants as certified balls.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lseries::beta_value;
use crate::numerics::{BallReal, Precision, Rational};

/// Registry names, in display order.
pub const REGISTRY: [&str; 7] = ["catalan", "pi", "sqrt2", "golden", "zeta2", "zeta3", "beta3"];

/// `atan(1/m)` at scale `2^work` for an integer `m >= 2`, as `(mid, rad)`.
/// Each truncated term is off by at most 3 units and the alternating tail
/// is below the first dropped term, which is itself below 2 units.
fn atan_recip(m: u64, work: u32) -> (BigInt, BigUint) {
    let m2 = BigUint::from(m) * m;
    let mut power = (BigUint::one() << work) / m;
    let mut sum = BigInt::zero();
    let mut terms = 0u64;
    let mut k = 0u64;
    while !power.is_zero() {
        let term = BigInt::from(&power / (2 * k + 1));
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
        terms += 1;
    }
    (sum, BigUint::from(3 * terms + 2))
}

/// `pi = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(precision: Precision) -> BallReal {
    let work = precision.bits() + 32;
    let (a, ra) = atan_recip(5, work);
    let (b, rb) = atan_recip(239, work);
    let mid = a * 16 - b * 4;
    let rad = ra * 16u32 + rb * 4u32;
    let p = Precision::new(work).expect("work precision exceeds the minimum");
    BallReal::from_raw(mid, rad, p).with_precision(precision)
}

/// `(1 + sqrt 5) / 2`.
pub fn golden(precision: Precision) -> BallReal {
    let root5 = BallReal::sqrt_of(&Rational::from_integer(5), precision).expect("5 >= 0");
    root5
        .add_ball(&BallReal::from_integer(1, precision))
        .mul_rational(&Rational::new(BigInt::one(), BigInt::from(2)).expect("nonzero"))
}

/// `zeta(3) = 5/2 sum_{k>=1} (-1)^(k+1) / (k^3 C(2k, k))`. The terms
/// alternate and decrease by about 4x, so the first dropped term bounds the
/// tail; each truncated term is off by less than one unit.
pub fn zeta3(precision: Precision) -> BallReal {
    let work = precision.bits() + 32;
    let unit = BigInt::one() << work;
    let mut sum = BigInt::zero();
    let mut central = BigInt::one();
    let mut terms = 0u64;
    for k in 1u64.. {
        central = central * (2 * (2 * k - 1)) / k;
        let term = &unit / (&central * BigInt::from(k).pow(3));
        if term.is_zero() {
            break;
        }
        if k % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        terms += 1;
    }
    let mid = sum * 5 / 2;
    let rad = BigUint::from(3 * terms + 4);
    let p = Precision::new(work).expect("work precision exceeds the minimum");
    BallReal::from_raw(mid, rad, p).with_precision(precision)
}

/// Looks up a registry constant by name.
pub fn constant(name: &str, precision: Precision) -> Result<BallReal> {
    match name {
        "catalan" => beta_value(2, precision),
        "pi" => Ok(pi(precision)),
        "sqrt2" => BallReal::sqrt_of(&Rational::from_integer(2), precision),
        "golden" => Ok(golden(precision)),
        "zeta2" => {
            let guard = Precision::new(precision.bits() + 16)?;
            let sixth = Rational::new(BigInt::one(), BigInt::from(6))?;
            Ok(pi(guard).square().mul_rational(&sixth).with_precision(precision))
        }
        "zeta3" => Ok(zeta3(precision)),
        "beta3" => beta_value(3, precision),
        other => Err(Error::Domain(format!(
            "unknown constant '{other}'; known: {}",
            REGISTRY.join(", ")
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lseries::zeta_value;

    const PI: &str = "3.14159265358979323846264338327950288419716939937510582097494459230781640628620899862803482534211706798214808651";
    const ZETA3: &str = "1.20205690315959428539973816151144999076498629234049888179227155534183820578631309018645587360933525814619915779526071942";
    const GOLDEN: &str = "1.61803398874989484820458683436563811772030917980576286213544862270526046281890244970720720418939113748475408807538689175212663386222353693179318006076672635443338908659593958290563832266131992829026788067520876689250171169620703222104321626954862629631361";

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    #[test]
    fn pi_matches_reference() {
        let r: Rational = PI.parse().unwrap();
        let ball = pi(p(300));
        assert!(ball.contains_rational(&r));
        assert!(ball.radius_f64() < 2f64.powi(-295));
        let low = pi(p(64));
        assert!((low.to_f64() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn golden_matches_reference() {
        let g = golden(p(512));
        let r: Rational = GOLDEN.parse().unwrap();
        let slack = Rational::new(BigInt::one(), BigInt::from(10).pow(150)).unwrap();
        assert!(g.lower() - slack.clone() <= r && r <= g.upper() + slack);
    }

    #[test]
    fn zeta3_matches_reference_and_series() {
        let r: Rational = ZETA3.parse().unwrap();
        let z = zeta3(p(300));
        assert!(z.contains_rational(&r));
        assert!(z.radius_f64() < 2f64.powi(-290));
        assert!(z.overlaps(&zeta_value(3, p(128)).unwrap()));
    }

    #[test]
    fn registry_resolves() {
        for name in REGISTRY {
            let c = constant(name, p(128)).unwrap();
            assert!(c.radius_f64() < 1e-35, "{name}");
        }
        assert!((constant("zeta2", p(128)).unwrap().to_f64() - 1.644_934_066_848_226_4).abs() < 1e-15);
        let err = constant("e", p(64)).unwrap_err().to_string();
        assert!(err.contains("catalan") && err.contains("beta3"));
    }
}
