use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{ContinuedFraction, Termination};
use crate::error::{Error, Result};
use crate::numerics::{BallReal, Rational};

/// The Gauss map `x -> 1/x - floor(1/x)` on `[0, 1]`, with `G(0) = 0`.
///
/// Fails with [`Error::PrecisionExhausted`] when the ball touches zero
/// without being exactly zero, or when `floor(1/x)` is not unique over it.
pub fn gauss_map(x: &BallReal) -> Result<BallReal> {
    if x.is_exact() && x.mid_raw().is_zero() {
        return Ok(x.clone());
    }
    if x.cmp_rational(&Rational::one()) == Some(Ordering::Greater) || x.sign() == Some(Ordering::Less) {
        return Err(Error::Domain(format!("gauss map argument {x} outside [0, 1]")));
    }
    if x.contains_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "gauss map argument {x} touches zero"
        )));
    }
    let inv = x
        .recip()
        .map_err(|_| Error::PrecisionExhausted("reciprocal of a ball near zero".into()))?;
    let a = inv
        .floor()
        .ok_or_else(|| Error::PrecisionExhausted(format!("floor of {inv} is ambiguous")))?;
    Ok(inv.sub_ball(&BallReal::from_integer(a, x.precision())))
}

/// Continued fraction of the real enclosed by `x`, up to `max_terms` terms
/// (`a0` included).
///
/// Stops with [`Termination::Terminated`] when the remainder is exactly zero
/// and with [`Termination::Capped`] when the cap is reached or the next
/// quotient cannot be certified. Only `a0` itself can fail.
pub fn expand(x: &BallReal, max_terms: usize) -> Result<ContinuedFraction> {
    if max_terms == 0 {
        return Err(Error::Domain("max_terms must be at least 1".into()));
    }
    let a0 = x
        .floor()
        .ok_or_else(|| Error::PrecisionExhausted(format!("integer part of {x} is ambiguous")))?;
    let precision = x.precision();
    let mut frac = x.sub_ball(&BallReal::from_integer(a0.clone(), precision));
    let mut quotients = Vec::new();
    let mut termination = Termination::Capped;
    while quotients.len() + 1 < max_terms {
        if frac.is_exact() && frac.mid_raw().is_zero() {
            termination = Termination::Terminated;
            break;
        }
        if frac.contains_zero() {
            break;
        }
        let Ok(inv) = frac.recip() else { break };
        let Some(a) = inv.floor() else { break };
        frac = inv.sub_ball(&BallReal::from_integer(a.clone(), precision));
        quotients.push(a);
    }
    if quotients.len() + 1 == max_terms && frac.is_exact() && frac.mid_raw().is_zero() {
        termination = Termination::Terminated;
    }
    ContinuedFraction::new(a0, quotients, termination)
}

/// Finite continued fraction of `r` by the Euclidean algorithm.
pub fn from_rational(r: &Rational) -> ContinuedFraction {
    let mut n = r.numer().clone();
    let mut d = r.denom().clone();
    let (a0, rem) = n.div_mod_floor(&d);
    let mut quotients: Vec<BigInt> = Vec::new();
    n = d;
    d = rem;
    while !d.is_zero() {
        let (a, rem) = n.div_mod_floor(&d);
        quotients.push(a);
        n = d;
        d = rem;
    }
    ContinuedFraction::new(a0, quotients, Termination::Terminated).expect("Euclidean quotients are positive")
}
