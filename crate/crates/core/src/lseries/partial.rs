use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::character::chi_mod4;
use crate::error::{Error, Result};
use crate::numerics::{BallReal, Precision, Rational};
use crate::stats::{divisor_sieve, primes_up_to};

/// Largest cutoff accepted by the exact partial sums.
pub const DEFAULT_EXACT_CAP: u64 = 1_000_000;

/// `sum_{n <= x} d(n) chi(n) / n^s`, exact and reduced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialSum {
    pub s: u32,
    pub x: u64,
    pub value: Rational,
    /// Bit length of the reduced denominator.
    pub q_bits: u64,
}

impl PartialSum {
    /// Decimal digit count of `|p|`.
    pub fn p_decimal_digits(&self) -> u64 {
        decimal_digit_count(self.value.numer().magnitude())
    }
}

/// Exact number of decimal digits of `n` (1 for zero).
pub fn decimal_digit_count(n: &BigUint) -> u64 {
    if n.is_zero() {
        return 1;
    }
    // Estimate from the bit length, then correct by comparing with 10^k.
    let estimate = ((n.bits() - 1) as f64 * std::f64::consts::LOG10_2).floor() as u64;
    let mut k = estimate.saturating_sub(1);
    let ten = BigUint::from(10u32);
    let mut power = ten.pow(k as u32);
    while &power * &ten <= *n {
        power *= &ten;
        k += 1;
    }
    k + 1
}

fn check_args(s: u32, x: u64, cap: u64) -> Result<()> {
    if s < 2 {
        return Err(Error::Domain(format!("exponent s = {s} must be at least 2")));
    }
    if x == 0 {
        return Err(Error::Domain("cutoff must be at least 1".into()));
    }
    if x > cap {
        return Err(Error::ResourceCap {
            what: "exact partial-sum cutoff",
            requested: x,
            cap,
        });
    }
    Ok(())
}

/// Common denominator `lcm(1, 3, 5, .., x')^s` with the primes that divide it.
struct CommonDenominator {
    value: BigUint,
    /// `(p, exponent of p in value)` for odd primes `p <= x`.
    primes: Vec<(u64, u64)>,
}

impl CommonDenominator {
    fn new(s: u32, x: u64) -> Self {
        let mut value = BigUint::one();
        let mut primes = Vec::new();
        for p in primes_up_to(x).into_iter().filter(|&p| p > 2) {
            let mut pk = p;
            let mut e = 1u64;
            while pk <= x / p {
                pk *= p;
                e += 1;
            }
            value *= pk;
            primes.push((p, e * s as u64));
        }
        CommonDenominator {
            value: value.pow(s),
            primes,
        }
    }

    /// `value / m^s` for odd `m <= x`, exact.
    fn quotient(&self, m: u64, s: u32) -> BigUint {
        let mut q = self.value.clone();
        let mut left = s;
        while left > 0 {
            let mut chunk = m;
            left -= 1;
            while left > 0 {
                match chunk.checked_mul(m) {
                    Some(c) => {
                        chunk = c;
                        left -= 1;
                    }
                    None => break,
                }
            }
            q /= chunk;
        }
        q
    }

    /// Reduces `numer / value` by stripping shared prime powers.
    fn reduce(&self, numer: &BigInt) -> (BigInt, BigUint) {
        if numer.is_zero() {
            return (BigInt::zero(), BigUint::one());
        }
        let mut n = numer.magnitude().clone();
        let mut d = self.value.clone();
        for &(p, e) in &self.primes {
            let mut strip = 0u64;
            while strip < e && (&n % p).is_zero() {
                n /= p;
                strip += 1;
            }
            if strip > 0 {
                d /= BigUint::from(p).pow(strip as u32);
            }
        }
        (BigInt::from_biguint(numer.sign(), n), d)
    }

    fn partial_sum(&self, s: u32, x: u64, numer: &BigInt) -> PartialSum {
        let (n, d) = self.reduce(numer);
        let q_bits = d.bits();
        PartialSum {
            s,
            x,
            value: Rational::from_reduced(n, BigInt::from(d)),
            q_bits,
        }
    }
}

/// `sum_{n <= x} d(n) chi(n) / n^s` in exact arithmetic, for `s >= 2` and
/// `1 <= x <= DEFAULT_EXACT_CAP`.
pub fn conv_partial_exact(s: u32, x: u64) -> Result<PartialSum> {
    let mut sums = conv_partial_exact_at(s, &[x], DEFAULT_EXACT_CAP)?;
    Ok(sums.pop().expect("one checkpoint"))
}

/// Exact partial sums at several cutoffs from a single pass. Cutoffs are
/// returned in increasing order without duplicates.
pub fn conv_partial_exact_at(s: u32, xs: &[u64], cap: u64) -> Result<Vec<PartialSum>> {
    let mut checkpoints = xs.to_vec();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let Some(&x_max) = checkpoints.last() else {
        return Ok(Vec::new());
    };
    check_args(s, checkpoints[0], cap)?;
    check_args(s, x_max, cap)?;
    let divisors = divisor_sieve(x_max as usize)?;
    let common = CommonDenominator::new(s, x_max);
    let mut numer = BigInt::zero();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut next = checkpoints.iter().peekable();
    for n in 1..=x_max {
        let chi = chi_mod4(n);
        if chi != 0 {
            let term = BigInt::from(common.quotient(n, s) * divisors.get(n as usize));
            if chi > 0 {
                numer += term;
            } else {
                numer -= term;
            }
        }
        if next.peek() == Some(&&n) {
            next.next();
            out.push(common.partial_sum(s, n, &numer));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regrouping {
    /// `sum_n [d(4n+1)/(4n+1)^s - d(4n+3)/(4n+3)^s]` over complete pairs.
    Paired,
    /// Only pairs with `d(4n+1) = d(4n+3)`, each written over a single
    /// numerator `d(4n+1) ((4n+3)^s - (4n+1)^s)`; at `s = 2` that numerator
    /// is `(16n + 8) d(4n+1)`.
    CoincidenceOnly,
}

/// The partial sum regrouped into pairs `(4n+1, 4n+3)` with `4n+3 <= x`.
pub fn regrouped_partial(s: u32, x: u64, mode: Regrouping) -> Result<Rational> {
    check_args(s, x.max(1), DEFAULT_EXACT_CAP)?;
    if x < 3 {
        return Ok(Rational::zero());
    }
    let divisors = divisor_sieve(x as usize)?;
    let common = CommonDenominator::new(s, x);
    let mut numer = BigInt::zero();
    let mut n = 0u64;
    while 4 * n + 3 <= x {
        let (a, b) = (4 * n + 1, 4 * n + 3);
        let (da, db) = (divisors.get(a as usize), divisors.get(b as usize));
        match mode {
            Regrouping::Paired => {
                let pair = BigInt::from(common.quotient(a, s) * da) - BigInt::from(common.quotient(b, s) * db);
                numer += pair;
            }
            Regrouping::CoincidenceOnly if da == db => {
                let (ab, bb) = (BigUint::from(a), BigUint::from(b));
                let single = BigUint::from(da) * (bb.pow(s) - ab.pow(s));
                // a and b are coprime, so a^s b^s divides the common denominator.
                let scale = common.quotient(a, s) / bb.pow(s);
                numer += BigInt::from(single * scale);
            }
            Regrouping::CoincidenceOnly => {}
        }
        n += 1;
    }
    let (p, q) = common.reduce(&numer);
    Ok(Rational::from_reduced(p, BigInt::from(q)))
}

/// Upper bound on `|sum_{n > x} d(n) chi(n) / n^s|` for `s >= 2`, `x >= 16`.
///
/// With `d(n) <= 2 sqrt(n)` and an integral comparison the tail is at most
/// `2 x^(3/2 - s) / (s - 3/2) = 4 / ((2s - 3) x^(s-2) sqrt(x))`; replacing
/// `sqrt(x)` by `isqrt(x)` keeps it an upper bound.
pub fn tail_bound(s: u32, x: u64) -> Result<Rational> {
    if s < 2 {
        return Err(Error::Domain(format!("tail bound needs s >= 2, got {s}")));
    }
    if x < 16 {
        return Err(Error::Domain(format!("tail bound needs x >= 16, got {x}")));
    }
    let denom = BigInt::from(2 * s - 3) * BigInt::from(x).pow(s - 2) * BigInt::from(x.isqrt());
    Rational::new(BigInt::from(4), denom)
}

/// Ball enclosing `L(s, chi)^2` from a partial sum and its tail bound.
pub fn autoconvolution_enclosure(partial: &PartialSum, precision: Precision) -> Result<BallReal> {
    let bound = tail_bound(partial.s, partial.x)?;
    let lo = &partial.value - &bound;
    let hi = &partial.value + &bound;
    BallReal::from_interval(&lo, &hi, precision)
}

/// `log2` of the reduced denominator as an `f64`.
pub fn denominator_log2(partial: &PartialSum) -> f64 {
    crate::numerics::log2_bigint(partial.value.denom())
}

/// `f64` approximation of the value.
pub fn value_f64(partial: &PartialSum) -> f64 {
    partial.value.to_f64()
}
