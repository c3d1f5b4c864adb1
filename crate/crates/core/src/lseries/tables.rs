use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumberKind {
    Bernoulli,
    Euler,
}

/// Bernoulli numbers `B_m` (every index, with `B_1 = -1/2`) or Euler
/// numbers `E_{2n}` (even indices; the odd ones vanish).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ExactNumberTable {
    pub bernoulli: BTreeMap<usize, Rational>,
    #[serde(serialize_with = "serialize_int_map")]
    pub euler: BTreeMap<usize, BigInt>,
}

fn serialize_int_map<S: serde::Serializer>(
    map: &BTreeMap<usize, BigInt>,
    serializer: S,
) -> std::result::Result<S::Ok, S::Error> {
    serializer.collect_map(map.iter().map(|(k, v)| (k, v.to_string())))
}

/// Binomial coefficients `C(m, 0..=m)`.
fn binomial_row(m: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m + 1);
    let mut c = BigInt::one();
    for k in 0..=m {
        row.push(c.clone());
        c = c * (m - k) / (k + 1);
    }
    row
}

/// `B_0 .. B_max` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(max: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(max + 1);
    b.push(Rational::one());
    for m in 1..=max {
        let row = binomial_row(m + 1);
        let acc: Rational = (0..m).map(|k| &Rational::from_integer(row[k].clone()) * &b[k]).sum();
        let value = -(acc * Rational::recip_of(m as i64 + 1).expect("m + 1 > 0"));
        b.push(value);
    }
    b
}

/// `E_0, E_2, .., E_{2n}` from `sum_{k=0}^{n} C(2n, 2k) E_{2k} = 0`.
pub fn euler_numbers(n: usize) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = Vec::with_capacity(n + 1);
    e.push(BigInt::one());
    for m in 1..=n {
        let row = binomial_row(2 * m);
        let acc: BigInt = (0..m).map(|k| &row[2 * k] * &e[k]).sum();
        e.push(-acc);
    }
    e
}

/// Table up to `max_index` (which must be even).
pub fn exact_number_table(kind: NumberKind, max_index: usize) -> Result<ExactNumberTable> {
    if !max_index.is_multiple_of(2) {
        return Err(Error::Domain(format!("table index {max_index} must be even")));
    }
    let mut table = ExactNumberTable::default();
    match kind {
        NumberKind::Bernoulli => {
            table.bernoulli = bernoulli_numbers(max_index).into_iter().enumerate().collect();
        }
        NumberKind::Euler => {
            table.euler = euler_numbers(max_index / 2)
                .into_iter()
                .enumerate()
                .map(|(k, v)| (2 * k, v))
                .collect();
        }
    }
    Ok(table)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedFormKind {
    /// `zeta(2n)`, `n >= 1`.
    ZetaEven,
    /// `L(2n+1, chi)`, `n >= 0`.
    BetaOdd,
}

/// A value of the form `coefficient * pi^pi_power`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedForm {
    pub coefficient: Rational,
    pub pi_power: u32,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Rational coefficient of `zeta(2n) = (-1)^(n+1) (2 pi)^(2n) B_{2n} / (2 (2n)!)`
/// or `L(2n+1, chi) = (-1)^n pi^(2n+1) E_{2n} / (2^(2n+2) (2n)!)`.
pub fn closed_form(kind: ClosedFormKind, n: u32) -> Result<ClosedForm> {
    let m = n as usize;
    match kind {
        ClosedFormKind::ZetaEven => {
            if n == 0 {
                return Err(Error::Domain("zeta_even needs n >= 1".into()));
            }
            let b = bernoulli_numbers(2 * m).pop().expect("nonempty");
            let scale = Rational::new(BigInt::one() << (2 * m), factorial(2 * m) * 2)?;
            let c = b * scale;
            let coefficient = if n % 2 == 1 { c } else { -c };
            Ok(ClosedForm {
                coefficient,
                pi_power: 2 * n,
            })
        }
        ClosedFormKind::BetaOdd => {
            let e = euler_numbers(m).pop().expect("nonempty");
            let denom = factorial(2 * m) << (2 * m + 2);
            let numer = if n.is_multiple_of(2) { e } else { -e };
            Ok(ClosedForm {
                coefficient: Rational::new(numer, denom)?,
                pi_power: 2 * n + 1,
            })
        }
    }
}

/// `(s)_k = s (s+1) .. (s+k-1)`.
pub(crate) fn rising(s: u32, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, j| acc * (s as usize + j))
}
