use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::tables::{bernoulli_numbers, rising};
use crate::error::{Error, Result};
use crate::numerics::{BallReal, Precision, Rational};

const GUARD_BITS: u32 = 40;

/// `round(n / d)` for `d > 0`, ties away from zero.
fn round_div(n: &BigInt, d: &BigInt) -> BigInt {
    let twice: BigInt = n << 1u32;
    let (q, _) = (twice + if n.is_negative() { -d } else { d.clone() }).div_rem(&(d << 1u32));
    q
}

fn odd_power(k: u64, s: u32) -> BigUint {
    BigUint::from(2 * k + 1).pow(s)
}

/// `L(s, chi) = sum_{k >= 0} (-1)^k / (2k+1)^s` for `s >= 1`.
///
/// Uses the Cohen-Villegas-Zagier acceleration of alternating series. The
/// terms `(2k+1)^-s` are moments of a positive measure on `[0, 1]`, so the
/// weighted sum after `n` steps differs from the limit by at most
/// `a_0 / T_n(3) = 1 / T_n(3)`, with `T_n` the Chebyshev polynomial. That
/// bound, the per-term rounding and the final division make up the radius.
pub fn beta_value(s: u32, precision: Precision) -> Result<BallReal> {
    if s == 0 {
        return Err(Error::Domain("beta_value needs s >= 1".into()));
    }
    let work = precision.bits() + GUARD_BITS;
    // log2(3 + sqrt 8) > 2.54
    let n = (work as u64 + 4) * 100 / 254 + 2;
    let (mut t_prev, mut d) = (BigInt::one(), BigInt::from(3));
    for _ in 1..n {
        let next = &d * 6 - &t_prev;
        t_prev = std::mem::replace(&mut d, next);
    }
    let unit = BigInt::one() << work;
    let mut b = -BigInt::one();
    let mut c = -d.clone();
    let mut sum = BigInt::zero();
    let nn = BigInt::from(n);
    for k in 0..n {
        c = &b - &c;
        let denom = BigInt::from(odd_power(k, s));
        sum += round_div(&(&c * &unit), &denom);
        let kk = BigInt::from(k);
        let numer: BigInt = &b * 2 * (&kk + &nn) * (&kk - &nn);
        let (q, r) = numer.div_rem(&BigInt::from((2 * k + 1) * (k + 1)));
        debug_assert!(r.is_zero(), "acceleration weights are integers");
        b = q;
    }
    let mid = round_div(&sum, &d);
    // Truncation 1/d, accumulated term rounding n/(2d), final rounding 1/2.
    let truncation: BigInt = (&unit + &d - 1u32) / &d;
    let rounding: BigInt = BigInt::from(n) / (&d * 2) + 2;
    let rad: BigUint = (truncation + rounding).magnitude().clone();
    let p = Precision::new(work)?;
    Ok(BallReal::from_raw(mid, rad, p).with_precision(precision))
}

/// The same value from the plain alternating sum of `cutoff` terms. The
/// limit lies between consecutive partial sums, which gives the enclosure;
/// each fixed-point term adds half a unit of rounding.
pub fn beta_plain(s: u32, cutoff: u64, precision: Precision) -> Result<BallReal> {
    if s == 0 {
        return Err(Error::Domain("beta_plain needs s >= 1".into()));
    }
    if cutoff == 0 {
        return Err(Error::Domain("beta_plain needs a positive cutoff".into()));
    }
    let work = precision.bits() + GUARD_BITS + 64 - cutoff.leading_zeros();
    let unit = BigUint::one() << work;
    let term = |k: u64| -> BigUint {
        let den = odd_power(k, s);
        let (q, r) = unit.div_rem(&den);
        if r << 1u32 >= den {
            q + 1u32
        } else {
            q
        }
    };
    let (mut pos, mut neg) = (BigUint::zero(), BigUint::zero());
    for k in 0..cutoff {
        if k % 2 == 0 {
            pos += term(k);
        } else {
            neg += term(k);
        }
    }
    let partial = BigInt::from(pos) - BigInt::from(neg);
    let next = BigInt::from(term(cutoff));
    let signed_next = if cutoff.is_multiple_of(2) {
        next.clone()
    } else {
        -next.clone()
    };
    // Midpoint of [S_K, S_{K+1}] (floored), half-width plus rounding slack.
    let mid: BigInt = (&partial * 2 + &signed_next) >> 1u32;
    let rad = next.magnitude() / 2u32 + 1u32 + BigUint::from(cutoff.div_ceil(2) + 1) + 1u32;
    let p = Precision::new(work)?;
    Ok(BallReal::from_raw(mid, rad, p).with_precision(precision))
}

/// `zeta(s)` for `s >= 2` by Euler-Maclaurin summation,
///
/// `sum_{n<N} n^-s + N^(1-s)/(s-1) + N^-s/2 + sum_k B_2k/(2k)! (s)_{2k-1} N^(-s-2k+1)`.
///
/// For real `s` the remainder is bounded by the first omitted correction.
pub fn zeta_value(s: u32, precision: Precision) -> Result<BallReal> {
    if s < 2 {
        return Err(Error::Domain("zeta_value needs s >= 2".into()));
    }
    let work = precision.bits() + GUARD_BITS;
    let p = Precision::new(work)?;
    let big_n = (work as u64).max(16);
    let mut acc = BallReal::zero(p);
    for n in 1..big_n {
        acc = acc.add_rational(&Rational::recip_of(BigInt::from(n).pow(s))?);
    }
    let nn = BigInt::from(big_n);
    acc = acc.add_rational(&Rational::new(BigInt::one(), nn.pow(s - 1) * (s - 1))?);
    acc = acc.add_rational(&Rational::new(BigInt::one(), nn.pow(s) * 2)?);

    let threshold = Rational::new(BigInt::one(), BigInt::one() << work)?;
    let max_k = (big_n / 4 + 16) as usize;
    let bernoulli = bernoulli_numbers(2 * max_k);
    let mut factorial = BigInt::one();
    for k in 1..=max_k {
        factorial *= (2 * k - 1) * (2 * k);
        let exp = s + 2 * k as u32 - 1;
        let scale = Rational::new(rising(s, 2 * k - 1), &factorial * nn.pow(exp))?;
        let term = &bernoulli[2 * k] * &scale;
        if term.abs() < threshold {
            // First omitted correction: below one unit in the last place.
            let bound = BallReal::from_raw(BigInt::zero(), BigUint::one(), p);
            return Ok(acc.add_ball(&bound).with_precision(precision));
        }
        acc = acc.add_rational(&term);
    }
    Err(Error::PrecisionExhausted(format!(
        "Euler-Maclaurin terms for zeta({s}) did not converge"
    )))
}
