use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::contfrac::Convergent;
use crate::error::{Error, Result};
use crate::numerics::{BallReal, Rational, Truth};

/// How well a rational `p/q` approximates a target ball.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationQuality {
    pub target: BallReal,
    pub approx: Convergent,
    /// Enclosure of `|xi - p/q|`.
    pub gap: BallReal,
    /// `gap < 1 / (2 q^2)`.
    pub dirichlet_ok: Truth,
    /// `gap < 1 / (sqrt(5) q^2)`.
    pub hurwitz_ok: Truth,
}

impl ApproximationQuality {
    /// `q^2 gap` at the midpoint of the gap ball.
    pub fn scaled_gap(&self) -> f64 {
        let q2 = Rational::from_integer(&self.approx.q * &self.approx.q);
        (self.gap.midpoint() * q2).to_f64()
    }
}

/// Gap and threshold flags for one approximation.
///
/// An exact target equal to `p/q` gives a zero gap with both flags true;
/// a gap ball that straddles zero otherwise is a precision failure.
pub fn approximation_quality(target: &BallReal, approx: &Convergent) -> Result<ApproximationQuality> {
    if approx.q < BigInt::one() {
        return Err(Error::Domain(format!("denominator {} must be positive", approx.q)));
    }
    let diff = target.sub_rational(&approx.value());
    let exact_hit = diff.is_exact() && diff.mid_raw().is_zero();
    if !exact_hit && diff.contains_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "cannot separate the target from {}/{}",
            approx.p, approx.q
        )));
    }
    let gap = diff.abs();
    let (dirichlet_ok, hurwitz_ok) = if exact_hit {
        (Truth::True, Truth::True)
    } else {
        let q2 = &approx.q * &approx.q;
        let dirichlet = gap.lt_rational(&Rational::new(BigInt::one(), &q2 * 2)?);
        // gap < 1/(sqrt 5 q^2)  <=>  5 q^4 gap^2 < 1 for a positive gap.
        let hurwitz = gap.square().mul_int(&(&q2 * &q2 * 5)).lt_rational(&Rational::one());
        (dirichlet, hurwitz)
    };
    Ok(ApproximationQuality {
        target: target.clone(),
        approx: approx.clone(),
        gap,
        dirichlet_ok,
        hurwitz_ok,
    })
}

/// `min{q^2 (xi - p/q), q^2 (r/s - xi)} < 1/2` for a unimodular pair
/// `p/q < xi < r/s` with `qr - ps = 1`.
///
/// The second product uses `q^2` exactly as displayed in the statement
/// being checked; the classical symmetric form has `s^2` there.
pub fn lemma10_check(target: &BallReal, left: &Rational, right: &Rational) -> Result<Truth> {
    let (p, q) = (left.numer(), left.denom());
    let (r, s) = (right.numer(), right.denom());
    let det = q * r - p * s;
    if det != BigInt::one() {
        return Err(Error::Domain(format!(
            "pair {left}, {right} is not unimodular: qr - ps = {det}"
        )));
    }
    let above_left = target.cmp_rational(left) == Some(std::cmp::Ordering::Greater);
    let below_right = target.cmp_rational(right) == Some(std::cmp::Ordering::Less);
    if !(above_left && below_right) {
        return Err(Error::Domain(format!(
            "target is not certifiably inside ({left}, {right})"
        )));
    }
    let q2 = q * q;
    let half = Rational::new(BigInt::one(), BigInt::from(2))?;
    let lower = target.sub_rational(left).mul_int(&q2).lt_rational(&half);
    let upper = (-target.clone()).add_rational(right).mul_int(&q2).lt_rational(&half);
    Ok(match (lower, upper) {
        (Truth::True, _) | (_, Truth::True) => Truth::True,
        (Truth::False, Truth::False) => Truth::False,
        _ => Truth::Undecidable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{golden, pi};
    use crate::contfrac::{convergents, expand};
    use crate::numerics::{make_rational, Precision};

    fn p(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn conv(p_: i64, q: i64) -> Convergent {
        Convergent {
            index: 0,
            p: BigInt::from(p_),
            q: BigInt::from(q),
        }
    }

    #[test]
    fn pi_355_113() {
        let q = approximation_quality(&pi(p(256)), &conv(355, 113)).unwrap();
        let gap = q.gap.to_f64();
        assert!((gap - 2.667e-7).abs() < 1e-10, "gap {gap}");
        assert_eq!(q.dirichlet_ok, Truth::True);
        assert_eq!(q.hurwitz_ok, Truth::True);
        let q22 = approximation_quality(&pi(p(256)), &conv(22, 7)).unwrap();
        assert_eq!(q22.dirichlet_ok, Truth::True);
        assert_eq!(q22.hurwitz_ok, Truth::True);
        let q333 = approximation_quality(&pi(p(256)), &conv(333, 106)).unwrap();
        assert_eq!(q333.hurwitz_ok, Truth::False);
    }

    #[test]
    fn self_approximation() {
        let half = BallReal::from_rational(&make_rational(1, 2).unwrap(), p(64));
        let q = approximation_quality(&half, &conv(1, 2)).unwrap();
        assert!(q.gap.is_exact() && q.gap.mid_raw().is_zero());
        assert_eq!((q.dirichlet_ok, q.hurwitz_ok), (Truth::True, Truth::True));
    }

    #[test]
    fn straddling_gap_is_an_error() {
        let wide = BallReal::from_interval(
            &make_rational(49, 100).unwrap(),
            &make_rational(51, 100).unwrap(),
            p(64),
        )
        .unwrap();
        assert!(matches!(
            approximation_quality(&wide, &conv(1, 2)),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn undecidable_near_threshold() {
        // A ball straddling 1/(2 q^2) around p/q = 0/1.
        let wide =
            BallReal::from_interval(&make_rational(4, 10).unwrap(), &make_rational(6, 10).unwrap(), p(64)).unwrap();
        let q = approximation_quality(&wide, &conv(0, 1)).unwrap();
        assert_eq!(q.dirichlet_ok, Truth::Undecidable);
    }

    #[test]
    fn golden_scaled_gaps_alternate_around_limit() {
        let g = golden(p(512));
        let cf = expand(&g, 41).unwrap();
        let list = convergents(&cf, 41).items;
        let limit = 1.0 / 5f64.sqrt();
        let scaled: Vec<f64> = list[1..]
            .iter()
            .map(|c| approximation_quality(&g, c).unwrap().scaled_gap())
            .collect();
        assert!((scaled[29] - limit).abs() / limit < 0.01);
        // Successive values fall on opposite sides of 1/sqrt 5 (checked
        // while the offset is still visible in an f64).
        for w in scaled[2..26].windows(2) {
            assert!((w[0] - limit) * (w[1] - limit) < 0.0);
        }
    }

    #[test]
    fn bracket_check_examples() {
        let root2 = BallReal::sqrt_of(&Rational::from_integer(2), p(128)).unwrap();
        let holds = lemma10_check(&root2, &make_rational(1, 1).unwrap(), &make_rational(3, 2).unwrap()).unwrap();
        assert_eq!(holds, Truth::True);

        let eps = Rational::new(BigInt::one(), BigInt::from(10).pow(30)).unwrap();
        let x = BallReal::from_rational(&(make_rational(1, 2).unwrap() + eps), p(256));
        let probe = lemma10_check(&x, &make_rational(0, 1).unwrap(), &make_rational(1, 1).unwrap()).unwrap();
        assert_eq!(probe, Truth::True);

        let bad = lemma10_check(&x, &make_rational(1, 3).unwrap(), &make_rational(2, 3).unwrap());
        assert!(matches!(bad, Err(Error::Domain(_))));
        let outside = lemma10_check(&root2, &make_rational(0, 1).unwrap(), &make_rational(1, 1).unwrap());
        assert!(matches!(outside, Err(Error::Domain(_))));
    }
}
