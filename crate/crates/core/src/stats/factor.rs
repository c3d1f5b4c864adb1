use num_traits::ToPrimitive;
use serde::Serialize;

use crate::contfrac::{convergents, ContinuedFraction};
use crate::error::{Error, Result};
use crate::numerics::ln_biguint;

/// Miller-Rabin with the first 13 prime bases is exact below this bound.
const DETERMINISTIC_MR_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

/// Largest operand the factorizer accepts: products below `2 * limit` must
/// fit in a `u128` for the shift-and-add modular multiplication.
pub const FACTOR_LIMIT: u128 = 1 << 126;

/// Pollard-rho iteration budget per split.
const RHO_BUDGET: u64 = 2_000_000;

const SMALL_PRIMES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let (Some(p), true) = (a.checked_mul(b), m > 0) {
        return p % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = (acc + a) % m;
        }
        a = (a << 1) % m;
        b >>= 1;
    }
    acc
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Miller-Rabin over the first 13 prime bases. Exact below
/// `DETERMINISTIC_MR_BOUND`; above it a `true` is a strong probable prime.
fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for a in SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho; `None` when the budget runs out.
fn pollard_brent(n: u128) -> Option<u128> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    for c in 1..20u128 {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u128, 1u64, 1u128);
        let (mut x, mut ys);
        let mut g;
        let mut spent = 0u64;
        let m = 128u64;
        loop {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            loop {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
                if k >= r || g > 1 {
                    break;
                }
            }
            r *= 2;
            spent += r;
            if g > 1 || spent > RHO_BUDGET {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization with multiplicities, sorted by prime. `None` when a
/// cofactor resists Pollard rho within the budget. Every returned
/// factorization multiplies back to `n`.
pub fn factorize(n: u128) -> Option<Vec<(u128, u32)>> {
    let mut factors: Vec<u128> = Vec::new();
    let mut rest = n;
    for p in 2..1000u128 {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            factors.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            factors.push(m);
            continue;
        }
        let d = pollard_brent(m)?;
        stack.push(d);
        stack.push(m / d);
    }
    factors.sort_unstable();
    let mut grouped: Vec<(u128, u32)> = Vec::new();
    for p in factors {
        match grouped.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => grouped.push((p, 1)),
        }
    }
    let product = grouped
        .iter()
        .try_fold(1u128, |acc, &(p, e)| acc.checked_mul(p.checked_pow(e)?));
    assert_eq!(product, Some(n), "factorization of {n} does not multiply back");
    Some(grouped)
}

/// Largest prime factor `P(n)` and squarefree kernel `Q(n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FactorProfile {
    #[serde(serialize_with = "crate::serde_display")]
    pub largest_prime: u128,
    #[serde(serialize_with = "crate::serde_display")]
    pub kernel: u128,
    /// Set for `n = 1`, where both are defined as 1 by convention.
    pub unit_convention: bool,
    /// False when some prime factor above the deterministic Miller-Rabin
    /// bound is only a strong probable prime.
    pub primality_certified: bool,
}

pub fn factor_profile(n: u128) -> Result<FactorProfile> {
    if n == 0 {
        return Err(Error::Domain("factor profile of 0".into()));
    }
    if n == 1 {
        return Ok(FactorProfile {
            largest_prime: 1,
            kernel: 1,
            unit_convention: true,
            primality_certified: true,
        });
    }
    if n >= FACTOR_LIMIT {
        return Err(Error::ResourceCap {
            what: "factorization operand bits",
            requested: 128 - n.leading_zeros() as u64,
            cap: 126,
        });
    }
    let factors = factorize(n).ok_or(Error::ResourceCap {
        what: "pollard rho iterations",
        requested: RHO_BUDGET + 1,
        cap: RHO_BUDGET,
    })?;
    Ok(FactorProfile {
        largest_prime: factors.last().map(|f| f.0).unwrap_or(1),
        kernel: factors.iter().map(|f| f.0).product(),
        unit_convention: false,
        primality_certified: factors.iter().all(|&(p, _)| p < DETERMINISTIC_MR_BOUND),
    })
}

/// Factor data for one convergent denominator.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FactorRecord {
    pub k: usize,
    pub q: String,
    pub largest_prime: Option<String>,
    pub kernel: Option<String>,
    /// `P(q) >= exp(ln q / ln ln q)`; `None` when unfactored or `q < 3`.
    pub lemma3_1_ok: Option<bool>,
    /// `Q(q) >= q / (ln q)^(1 - delta)`; `None` when unfactored or `q < 3`.
    pub lemma3_2_ok: Option<bool>,
    pub factored: bool,
    pub primality_certified: bool,
}

/// Largest-prime and squarefree-kernel checks on `q_0 .. q_{n-1}`.
pub fn convergent_factor_stats(cf: &ContinuedFraction, n: usize, delta: f64) -> Result<Vec<FactorRecord>> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    let list = convergents(cf, n);
    Ok(list
        .items
        .iter()
        .map(|c| {
            let q_big = c.q.magnitude();
            let profile = q_big
                .to_u128()
                .filter(|&q| q < FACTOR_LIMIT)
                .and_then(|q| factor_profile(q).ok());
            let ln_q = ln_biguint(q_big);
            let applicable = ln_q > 1.0;
            let (l1, l2) = match profile {
                Some(p) if applicable => {
                    let ln_ln_q = ln_q.ln();
                    let one = (p.largest_prime as f64).ln() >= ln_q / ln_ln_q;
                    let two = (p.kernel as f64).ln() >= ln_q - (1.0 - delta) * ln_ln_q;
                    (Some(one), Some(two))
                }
                _ => (None, None),
            };
            FactorRecord {
                k: c.index,
                q: c.q.to_string(),
                largest_prime: profile.map(|p| p.largest_prime.to_string()),
                kernel: profile.map(|p| p.kernel.to_string()),
                lemma3_1_ok: l1,
                lemma3_2_ok: l2,
                factored: profile.is_some(),
                primality_certified: profile.is_some_and(|p| p.primality_certified),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contfrac::Termination;
    use proptest::prelude::*;

    #[test]
    fn profiles() {
        let p = |n| {
            let f = factor_profile(n).unwrap();
            (f.largest_prime, f.kernel)
        };
        assert_eq!(p(12), (3, 6));
        assert_eq!(p(97), (97, 97));
        assert_eq!(p(360), (5, 30));
        assert_eq!(p(8), (2, 2));
        assert!(factor_profile(1).unwrap().unit_convention);
        assert!(factor_profile(0).is_err());
    }

    #[test]
    fn large_semiprime() {
        // Two primes near 2^40.
        let a: u128 = 1_099_511_627_791;
        let b: u128 = 1_099_511_627_803;
        let f = factorize(a * b).unwrap();
        assert_eq!(f, vec![(a, 1), (b, 1)]);
    }

    #[test]
    fn fibonacci_hundred() {
        // F_100 = 3 * 5^2 * 11 * 41 * 101 * 151 * 401 * 3001 * 570601
        let f100: u128 = 354_224_848_179_261_915_075;
        let f = factorize(f100).unwrap();
        let primes: Vec<u128> = f.iter().map(|p| p.0).collect();
        assert_eq!(primes, [3, 5, 11, 41, 101, 151, 401, 3001, 570601]);
        assert_eq!(f[1], (5, 2));
    }

    #[test]
    fn pi_convergent_113() {
        let cf = ContinuedFraction::from_terms(&[3, 7, 15, 1], Termination::Capped).unwrap();
        let rows = convergent_factor_stats(&cf, 4, 0.5).unwrap();
        let last = rows.last().unwrap();
        assert_eq!(last.q, "113");
        assert_eq!(last.largest_prime.as_deref(), Some("113"));
        assert_eq!(last.kernel.as_deref(), Some("113"));
        assert_eq!(last.lemma3_1_ok, Some(true));
        assert_eq!(last.lemma3_2_ok, Some(true));
        // q_0 = 1 has no meaningful log log.
        assert_eq!(rows[0].lemma3_1_ok, None);
    }

    proptest! {
        #[test]
        fn kernel_divisibility(n in 2u128..(1u128 << 62)) {
            let f = factor_profile(n).unwrap();
            prop_assert_eq!(f.kernel % f.largest_prime, 0);
            prop_assert_eq!(n % f.kernel, 0);
            let factors = factorize(f.kernel).unwrap();
            prop_assert!(factors.iter().all(|&(_, e)| e == 1));
        }
    }
}
