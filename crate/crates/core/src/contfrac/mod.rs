//! Continued-fraction expansion, convergents and their statistics.
//!
//! Expansion of a [`BallReal`](crate::numerics::BallReal) only ever emits a
//! partial quotient when the whole ball shares it, so the depth reached is
//! limited by precision rather than by guesswork.

mod classify;
mod convergents;
mod expansion;
mod statistics;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};

pub use classify::{classify, CfClassification, CfKind};
pub use convergents::{cf_series_partial, convergents, Convergent, Convergents};
pub use expansion::{expand, from_rational, gauss_map};
pub use statistics::{cf_statistics, levy_constant, CfStatistics, KHINCHIN_CONSTANT};

/// How an expansion ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Termination {
    /// The expansion is complete; the source is the rational it encodes.
    Terminated,
    /// Stopped at the term cap or because precision ran out.
    Capped,
}

/// `[a0; a1, a2, ...]` with `a_i >= 1` for `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    a0: BigInt,
    quotients: Vec<BigInt>,
    termination: Termination,
}

impl ContinuedFraction {
    /// Validates the quotients. Terminated expansions ending in `1` are
    /// folded into the previous term so finite expansions are unique.
    pub fn new(a0: BigInt, mut quotients: Vec<BigInt>, termination: Termination) -> Result<Self> {
        if let Some((i, a)) = quotients.iter().enumerate().find(|(_, a)| !a.is_positive()) {
            return Err(Error::Domain(format!(
                "partial quotient a{} = {a} is not positive",
                i + 1
            )));
        }
        let mut a0 = a0;
        if termination == Termination::Terminated && quotients.last().is_some_and(|a| a.is_one()) {
            quotients.pop();
            match quotients.last_mut() {
                Some(prev) => *prev += 1,
                None => a0 += 1,
            }
        }
        Ok(ContinuedFraction {
            a0,
            quotients,
            termination,
        })
    }

    /// Convenience constructor from machine integers.
    pub fn from_terms(terms: &[i64], termination: Termination) -> Result<Self> {
        let (first, rest) = terms
            .split_first()
            .ok_or_else(|| Error::Domain("a continued fraction needs at least a0".into()))?;
        Self::new(
            BigInt::from(*first),
            rest.iter().map(|&a| BigInt::from(a)).collect(),
            termination,
        )
    }

    pub fn a0(&self) -> &BigInt {
        &self.a0
    }

    /// Partial quotients `a1, a2, ...` (excluding `a0`).
    pub fn quotients(&self) -> &[BigInt] {
        &self.quotients
    }

    /// The `i`-th term, counting `a0` as term 0.
    pub fn term(&self, i: usize) -> Option<&BigInt> {
        if i == 0 {
            Some(&self.a0)
        } else {
            self.quotients.get(i - 1)
        }
    }

    /// Number of terms including `a0`.
    pub fn len(&self) -> usize {
        1 + self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn termination(&self) -> Termination {
        self.termination
    }

    pub fn is_terminated(&self) -> bool {
        self.termination == Termination::Terminated
    }

    /// All terms as decimal strings, `a0` first.
    pub fn terms_as_strings(&self) -> Vec<String> {
        std::iter::once(&self.a0)
            .chain(self.quotients.iter())
            .map(|a| a.to_string())
            .collect()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}", self.a0)?;
        for (i, a) in self.quotients.iter().enumerate() {
            let sep = if i == 0 { "; " } else { ", " };
            write!(f, "{sep}{a}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Parses `[a0; a1, a2, ...]`. The result is marked terminated.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("not a continued fraction: {s:?}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (head, tail) = match inner.split_once(';') {
            Some((h, t)) => (h, Some(t)),
            None => (inner, None),
        };
        let a0: BigInt = head.trim().parse().map_err(|_| bad())?;
        let quotients = match tail {
            Some(t) if !t.trim().is_empty() => t
                .split(',')
                .map(|a| a.trim().parse::<BigInt>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?,
            _ => Vec::new(),
        };
        ContinuedFraction::new(a0, quotients, Termination::Terminated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_and_parse() {
        let cf = ContinuedFraction::from_terms(&[3, 7, 15, 1], Termination::Capped).unwrap();
        assert_eq!(cf.to_string(), "[3; 7, 15, 1]");
        assert_eq!(
            ContinuedFraction::from_terms(&[5], Termination::Terminated)
                .unwrap()
                .to_string(),
            "[5]"
        );
        let parsed: ContinuedFraction = "[0; 1, 3, 2]".parse().unwrap();
        assert_eq!(parsed.terms_as_strings(), vec!["0", "1", "3", "2"]);
        assert!("3; 7".parse::<ContinuedFraction>().is_err());
    }

    #[test]
    fn trailing_one_is_folded() {
        let cf = ContinuedFraction::from_terms(&[0, 1, 3, 1, 1], Termination::Terminated).unwrap();
        assert_eq!(cf.to_string(), "[0; 1, 3, 2]");
        let cf = ContinuedFraction::from_terms(&[2, 1], Termination::Terminated).unwrap();
        assert_eq!(cf.to_string(), "[3]");
        // Capped expansions are prefixes of something longer; leave them.
        let cf = ContinuedFraction::from_terms(&[2, 1], Termination::Capped).unwrap();
        assert_eq!(cf.to_string(), "[2; 1]");
    }

    #[test]
    fn rejects_nonpositive_quotients() {
        assert!(ContinuedFraction::from_terms(&[1, 0], Termination::Capped).is_err());
        assert!(ContinuedFraction::from_terms(&[1, 2, -3], Termination::Capped).is_err());
        assert!(ContinuedFraction::from_terms(&[], Termination::Capped).is_err());
    }
}
