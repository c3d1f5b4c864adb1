use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::ContinuedFraction;
use crate::error::{Error, Result};
use crate::numerics::Rational;

/// The `index`-th convergent `p / q` of a continued fraction.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Convergent {
    pub index: usize,
    #[serde(serialize_with = "crate::serde_display")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::serde_display")]
    pub q: BigInt,
}

impl Convergent {
    pub fn value(&self) -> Rational {
        Rational::new(self.p.clone(), self.q.clone()).expect("convergent denominators are positive")
    }
}

/// Convergents requested from a continued fraction, flagged when fewer
/// terms were available than asked for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergents {
    pub items: Vec<Convergent>,
    pub truncated: bool,
}

/// The first `n` convergents `p_k / q_k`, `k = 0..n`, from the recursions
/// `p_k = a_k p_{k-1} + p_{k-2}` and `q_k = a_k q_{k-1} + q_{k-2}` seeded by
/// `p_0 = a0, q_0 = 1, p_1 = a1 a0 + 1, q_1 = a1`.
pub fn convergents(cf: &ContinuedFraction, n: usize) -> Convergents {
    let available = n.min(cf.len());
    let mut items = Vec::with_capacity(available);
    let (mut p_prev, mut p) = (BigInt::zero(), BigInt::one());
    let (mut q_prev, mut q) = (BigInt::one(), BigInt::zero());
    for k in 0..available {
        let a = cf.term(k).expect("k < len");
        let p_next = a * &p + &p_prev;
        let q_next = a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        items.push(Convergent {
            index: k,
            p: p.clone(),
            q: q.clone(),
        });
    }
    Convergents {
        items,
        truncated: available < n,
    }
}

/// `a0 + sum_{k=1..n} (-1)^(k+1) / (q_k q_{k-1})`, which telescopes to the
/// `n`-th convergent. Only the denominator recursion is used.
pub fn cf_series_partial(cf: &ContinuedFraction, n: usize) -> Result<Rational> {
    if n > cf.quotients().len() {
        return Err(Error::Domain(format!(
            "series needs {n} partial quotients, expansion has {}",
            cf.quotients().len()
        )));
    }
    let mut q_prev = BigInt::one();
    let mut q_prev2 = BigInt::zero();
    let mut sum = Rational::from_integer(cf.a0().clone());
    for (k, a) in cf.quotients()[..n].iter().enumerate() {
        let q = a * &q_prev + &q_prev2;
        let term = Rational::new(BigInt::one(), &q * &q_prev).expect("positive denominators");
        sum = if k % 2 == 0 { sum + term } else { sum - term };
        q_prev2 = std::mem::replace(&mut q_prev, q);
    }
    Ok(sum)
}
