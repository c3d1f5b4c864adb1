use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{log2_biguint, Precision, Rational};
use crate::error::{Error, Result};

/// Three-valued outcome of a certified comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    True,
    False,
    Undecidable,
}

impl Truth {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Truth::True
        } else {
            Truth::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Truth::True
    }

    pub fn is_false(self) -> bool {
        self == Truth::False
    }

    pub fn is_decided(self) -> bool {
        self != Truth::Undecidable
    }

    pub fn and(self, other: Truth) -> Truth {
        match (self, other) {
            (Truth::False, _) | (_, Truth::False) => Truth::False,
            (Truth::True, Truth::True) => Truth::True,
            _ => Truth::Undecidable,
        }
    }
}

impl std::ops::Not for Truth {
    type Output = Truth;

    fn not(self) -> Truth {
        match self {
            Truth::True => Truth::False,
            Truth::False => Truth::True,
            Truth::Undecidable => Truth::Undecidable,
        }
    }
}

impl fmt::Display for Truth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Truth::True => "true",
            Truth::False => "false",
            Truth::Undecidable => "undecidable",
        })
    }
}

/// A real number known to lie in `[(mid - rad) / 2^bits, (mid + rad) / 2^bits]`.
///
/// Midpoint and radius are fixed-point integers sharing the scale `2^-bits`.
/// Every operation returns a ball enclosing all results obtainable from
/// points of the input balls, including the rounding of the midpoint.
/// Binary operations on balls of different precision work at the larger one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BallReal {
    mid: BigInt,
    rad: BigUint,
    bits: u32,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

/// Round-to-nearest `n / d` for `d > 0`, with an inexactness flag.
fn div_round(n: &BigInt, d: &BigInt) -> (BigInt, bool) {
    let (q, r) = n.div_mod_floor(d);
    if r.is_zero() {
        return (q, false);
    }
    let twice: BigInt = &r << 1u32;
    if twice >= *d {
        (q + 1, true)
    } else {
        (q, true)
    }
}

fn ceil_div(n: &BigUint, d: &BigUint) -> BigUint {
    let (q, r) = n.div_rem(d);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// Smallest integer `>= r`.
fn ceil_rational(r: &Rational) -> BigInt {
    -((-r).floor())
}

impl BallReal {
    pub fn from_raw(mid: BigInt, rad: BigUint, precision: Precision) -> Self {
        BallReal {
            mid,
            rad,
            bits: precision.bits(),
        }
    }

    pub fn zero(precision: Precision) -> Self {
        Self::from_raw(BigInt::zero(), BigUint::zero(), precision)
    }

    pub fn from_integer(n: impl Into<BigInt>, precision: Precision) -> Self {
        let mid = n.into() << precision.bits();
        Self::from_raw(mid, BigUint::zero(), precision)
    }

    /// Nearest representable ball around `r`; exact when `r` is dyadic
    /// within the precision.
    pub fn from_rational(r: &Rational, precision: Precision) -> Self {
        let scaled = r.numer() << precision.bits();
        let (mid, inexact) = div_round(&scaled, r.denom());
        let rad = if inexact { BigUint::one() } else { BigUint::zero() };
        Self::from_raw(mid, rad, precision)
    }

    /// A ball covering the closed interval `[lo, hi]`.
    pub fn from_interval(lo: &Rational, hi: &Rational, precision: Precision) -> Result<Self> {
        if lo > hi {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        let scale = Rational::from_integer(pow2(precision.bits()));
        let lo_s = lo * &scale;
        let hi_s = hi * &scale;
        let center = (&lo_s + &hi_s) * Rational::new(BigInt::one(), BigInt::from(2))?;
        let mid = center.floor();
        let mid_r = Rational::from_integer(mid.clone());
        let up = ceil_rational(&(&hi_s - &mid_r));
        let down = ceil_rational(&(&mid_r - &lo_s));
        let rad = up.max(down).max(BigInt::zero());
        Ok(Self::from_raw(mid, rad.magnitude().clone(), precision))
    }

    /// Enclosure of `sqrt(r)` for `r >= 0`.
    pub fn sqrt_of(r: &Rational, precision: Precision) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::Domain(format!("square root of negative {r}")));
        }
        let bits = precision.bits();
        let scaled = r.numer().magnitude() << (2 * bits);
        let (t, rem) = scaled.div_rem(r.denom().magnitude());
        let s = t.sqrt();
        let exact = rem.is_zero() && &s * &s == t;
        let rad = if exact { BigUint::zero() } else { BigUint::one() };
        Ok(Self::from_raw(BigInt::from(s), rad, precision))
    }

    pub fn precision(&self) -> Precision {
        Precision::new(self.bits).expect("ball precision is validated on construction")
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Scaled midpoint integer (value times `2^bits`).
    pub fn mid_raw(&self) -> &BigInt {
        &self.mid
    }

    /// Scaled radius integer (radius times `2^bits`).
    pub fn rad_raw(&self) -> &BigUint {
        &self.rad
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn scaled_to_rational(&self, n: BigInt) -> Rational {
        Rational::new(n, pow2(self.bits)).expect("power of two is nonzero")
    }

    pub fn midpoint(&self) -> Rational {
        self.scaled_to_rational(self.mid.clone())
    }

    pub fn radius(&self) -> Rational {
        self.scaled_to_rational(BigInt::from(self.rad.clone()))
    }

    pub fn lower(&self) -> Rational {
        self.scaled_to_rational(&self.mid - BigInt::from(self.rad.clone()))
    }

    pub fn upper(&self) -> Rational {
        self.scaled_to_rational(&self.mid + BigInt::from(self.rad.clone()))
    }

    fn lower_raw(&self) -> BigInt {
        &self.mid - BigInt::from(self.rad.clone())
    }

    fn upper_raw(&self) -> BigInt {
        &self.mid + BigInt::from(self.rad.clone())
    }

    /// The midpoint as an `f64` (no enclosure).
    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Radius as an `f64` upper estimate.
    pub fn radius_f64(&self) -> f64 {
        if self.rad.is_zero() {
            return 0.0;
        }
        (log2_biguint(&self.rad) - self.bits as f64).exp2()
    }

    /// Same value at another precision. Raising is exact; lowering rounds
    /// the midpoint and widens the radius accordingly.
    pub fn with_precision(&self, precision: Precision) -> Self {
        let bits = precision.bits();
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let shift = bits - self.bits;
                Self::from_raw(&self.mid << shift, &self.rad << shift, precision)
            }
            Ordering::Less => {
                let shift = self.bits - bits;
                let (mid, inexact) = div_round(&self.mid, &pow2(shift));
                let mut rad = ceil_div(&self.rad, &(BigUint::one() << shift));
                if inexact {
                    rad += 1u32;
                }
                Self::from_raw(mid, rad, precision)
            }
        }
    }

    fn aligned(&self, other: &BallReal) -> (BallReal, BallReal) {
        if self.bits == other.bits {
            (self.clone(), other.clone())
        } else {
            let p = self.precision().max(other.precision());
            (self.with_precision(p), other.with_precision(p))
        }
    }

    pub fn add_ball(&self, other: &BallReal) -> BallReal {
        let (a, b) = self.aligned(other);
        BallReal {
            mid: a.mid + b.mid,
            rad: a.rad + b.rad,
            bits: a.bits,
        }
    }

    pub fn sub_ball(&self, other: &BallReal) -> BallReal {
        let (a, b) = self.aligned(other);
        BallReal {
            mid: a.mid - b.mid,
            rad: a.rad + b.rad,
            bits: a.bits,
        }
    }

    pub fn mul_ball(&self, other: &BallReal) -> BallReal {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let (mid, inexact) = div_round(&(&a.mid * &b.mid), &pow2(bits));
        let spread = a.mid.magnitude() * &b.rad + b.mid.magnitude() * &a.rad + &a.rad * &b.rad;
        let mut rad = ceil_div(&spread, &(BigUint::one() << bits));
        if inexact {
            rad += 1u32;
        }
        BallReal { mid, rad, bits }
    }

    /// `self / other`; fails when `other` may be zero.
    pub fn div_ball(&self, other: &BallReal) -> Result<BallReal> {
        let (a, b) = self.aligned(other);
        let bits = a.bits;
        let denom_mag = b.mid.magnitude();
        if *denom_mag <= b.rad {
            return Err(Error::DivisionByZero);
        }
        let (mid, inexact) = {
            let mut n = &a.mid << bits;
            let mut d = b.mid.clone();
            if d.sign() == Sign::Minus {
                n = -n;
                d = -d;
            }
            div_round(&n, &d)
        };
        let spread = (a.mid.magnitude() * &b.rad + denom_mag * &a.rad) << bits;
        let mut rad = if spread.is_zero() {
            BigUint::zero()
        } else {
            ceil_div(&spread, &(denom_mag * (denom_mag - &b.rad)))
        };
        if inexact {
            rad += 1u32;
        }
        Ok(BallReal { mid, rad, bits })
    }

    pub fn recip(&self) -> Result<BallReal> {
        BallReal::from_integer(1, self.precision()).div_ball(self)
    }

    pub fn mul_int(&self, k: &BigInt) -> BallReal {
        BallReal {
            mid: &self.mid * k,
            rad: &self.rad * k.magnitude(),
            bits: self.bits,
        }
    }

    pub fn add_rational(&self, r: &Rational) -> BallReal {
        self.add_ball(&BallReal::from_rational(r, self.precision()))
    }

    pub fn sub_rational(&self, r: &Rational) -> BallReal {
        self.sub_ball(&BallReal::from_rational(r, self.precision()))
    }

    pub fn mul_rational(&self, r: &Rational) -> BallReal {
        let prod = self.mul_int(r.numer());
        prod.div_ball(&BallReal::from_integer(r.denom().clone(), self.precision()))
            .expect("denominator is positive")
    }

    pub fn square(&self) -> BallReal {
        if self.contains_zero() {
            // x^2 over an interval straddling zero is [0, max(lo^2, hi^2)].
            let m = self.lower_raw().magnitude().max(self.upper_raw().magnitude()).clone();
            let top = BallReal::from_raw(BigInt::from(m), BigUint::zero(), self.precision());
            let hi = top.mul_ball(&top);
            let upper = hi.upper_raw();
            let mid: BigInt = &upper >> 1u32;
            let rad = (&upper - &mid).magnitude().clone();
            return BallReal {
                mid,
                rad,
                bits: self.bits,
            };
        }
        self.mul_ball(self)
    }

    pub fn pow(&self, exp: u32) -> BallReal {
        let mut result = BallReal::from_integer(1, self.precision());
        for _ in 0..exp {
            result = result.mul_ball(self);
        }
        result
    }

    pub fn abs(&self) -> BallReal {
        match self.sign() {
            Some(Ordering::Less) => -self.clone(),
            Some(_) => self.clone(),
            None => {
                let m = self.lower_raw().magnitude().max(self.upper_raw().magnitude()).clone();
                let m = BigInt::from(m);
                let mid: BigInt = &m >> 1u32;
                let rad = (&m - &mid).magnitude().clone();
                BallReal {
                    mid,
                    rad,
                    bits: self.bits,
                }
            }
        }
    }

    pub fn contains_zero(&self) -> bool {
        *self.mid.magnitude() <= self.rad
    }

    /// Certified sign, or `None` when the ball contains zero without being
    /// exactly zero.
    pub fn sign(&self) -> Option<Ordering> {
        if self.rad.is_zero() {
            return Some(self.mid.cmp(&BigInt::zero()));
        }
        if *self.mid.magnitude() > self.rad {
            Some(self.mid.cmp(&BigInt::zero()))
        } else {
            None
        }
    }

    /// Certified `floor`, when every point of the ball shares it.
    pub fn floor(&self) -> Option<BigInt> {
        let unit = pow2(self.bits);
        let lo = self.lower_raw().div_floor(&unit);
        let hi = self.upper_raw().div_floor(&unit);
        (lo == hi).then_some(lo)
    }

    /// Certified ordering against an exact rational.
    pub fn cmp_rational(&self, r: &Rational) -> Option<Ordering> {
        let scale = pow2(self.bits);
        let cmp_at = |raw: &BigInt| super::rational::cmp_fractions(raw, &scale, r.numer(), r.denom());
        if self.rad.is_zero() {
            return Some(cmp_at(&self.mid));
        }
        if cmp_at(&self.upper_raw()) == Ordering::Less {
            Some(Ordering::Less)
        } else if cmp_at(&self.lower_raw()) == Ordering::Greater {
            Some(Ordering::Greater)
        } else {
            None
        }
    }

    /// Whether every point of the ball is strictly below `r`.
    pub fn lt_rational(&self, r: &Rational) -> Truth {
        let scale = pow2(self.bits);
        let cmp_at = |raw: &BigInt| super::rational::cmp_fractions(raw, &scale, r.numer(), r.denom());
        if cmp_at(&self.upper_raw()) == Ordering::Less {
            Truth::True
        } else if cmp_at(&self.lower_raw()) != Ordering::Less {
            Truth::False
        } else {
            Truth::Undecidable
        }
    }

    /// Whether every point of the ball is at most `r`.
    pub fn le_rational(&self, r: &Rational) -> Truth {
        let scale = pow2(self.bits);
        let cmp_at = |raw: &BigInt| super::rational::cmp_fractions(raw, &scale, r.numer(), r.denom());
        if cmp_at(&self.upper_raw()) != Ordering::Greater {
            Truth::True
        } else if cmp_at(&self.lower_raw()) == Ordering::Greater {
            Truth::False
        } else {
            Truth::Undecidable
        }
    }

    pub fn contains_rational(&self, r: &Rational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn overlaps(&self, other: &BallReal) -> bool {
        let (a, b) = self.aligned(other);
        a.lower_raw() <= b.upper_raw() && b.lower_raw() <= a.upper_raw()
    }

    /// Bounds on `log2` of a positive ball, padded outward by `1e-9` to
    /// cover the floating-point evaluation of the endpoints.
    pub fn log2_bounds(&self) -> Option<(f64, f64)> {
        let lo = self.lower_raw();
        if lo.sign() != Sign::Plus {
            return None;
        }
        let hi = self.upper_raw();
        let l = log2_biguint(lo.magnitude()) - self.bits as f64;
        let h = log2_biguint(hi.magnitude()) - self.bits as f64;
        const PAD: f64 = 1e-9;
        Some((l - PAD * (1.0 + l.abs()), h + PAD * (1.0 + h.abs())))
    }

    /// Radius in units of the last place, as a small integer when it fits.
    pub fn radius_ulps(&self) -> Option<u64> {
        self.rad.to_u64()
    }
}

impl Neg for BallReal {
    type Output = BallReal;
    fn neg(self) -> BallReal {
        BallReal {
            mid: -self.mid,
            rad: self.rad,
            bits: self.bits,
        }
    }
}

impl Add for &BallReal {
    type Output = BallReal;
    fn add(self, rhs: &BallReal) -> BallReal {
        self.add_ball(rhs)
    }
}

impl Sub for &BallReal {
    type Output = BallReal;
    fn sub(self, rhs: &BallReal) -> BallReal {
        self.sub_ball(rhs)
    }
}

impl Mul for &BallReal {
    type Output = BallReal;
    fn mul(self, rhs: &BallReal) -> BallReal {
        self.mul_ball(rhs)
    }
}

impl fmt::Display for BallReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e} +/- {:.3e}]", self.to_f64(), self.radius_f64())
    }
}
