use serde::Serialize;

use super::gauss_map;
use crate::error::{Error, Result};
use crate::numerics::{BallReal, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CfKind {
    /// Some Gauss iterate is exactly zero.
    Rational,
    /// Iterates `k` and `k + period` overlap for every `k >= preperiod`
    /// that was computed. This is evidence only; overlapping balls do not
    /// prove equality.
    Periodic {
        preperiod: usize,
        period: usize,
    },
    Unresolved,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CfClassification {
    #[serde(flatten)]
    pub kind: CfKind,
    /// Number of Gauss iterates examined.
    pub evidence: usize,
}

/// Classifies `x` by iterating the Gauss map on its fractional part.
///
/// Iteration stops after `max_iterates` iterates, when an iterate's radius
/// exceeds `tolerance`, or when precision runs out after at least two
/// iterates (earlier exhaustion is returned as an error). Periodicity is
/// tested at every lag up to half the number of iterates, and the smallest
/// lag with at least `max(lag, 2)` overlapping comparisons wins.
pub fn classify(x: &BallReal, max_iterates: usize, tolerance: &Rational) -> Result<CfClassification> {
    if max_iterates < 2 {
        return Err(Error::Domain("classification needs at least 2 iterates".into()));
    }
    let a0 = x
        .floor()
        .ok_or_else(|| Error::PrecisionExhausted(format!("integer part of {x} is ambiguous")))?;
    let mut current = x.sub_ball(&BallReal::from_integer(a0, x.precision()));
    let mut iterates = Vec::with_capacity(max_iterates);
    loop {
        if current.is_exact() && current.mid_raw().sign() == num_bigint::Sign::NoSign {
            return Ok(CfClassification {
                kind: CfKind::Rational,
                evidence: iterates.len() + 1,
            });
        }
        iterates.push(current.clone());
        if iterates.len() >= max_iterates || current.radius() > *tolerance {
            break;
        }
        match gauss_map(&current) {
            Ok(next) => current = next,
            Err(Error::PrecisionExhausted(msg)) => {
                if iterates.len() < 2 {
                    return Err(Error::PrecisionExhausted(msg));
                }
                break;
            }
            Err(e) => return Err(e),
        }
    }

    let evidence = iterates.len();
    let len = iterates.len();
    for period in 1..=len / 2 {
        // Extend the agreeing suffix backwards from the last comparable pair.
        let mut start = len - period;
        while start > 0 && iterates[start - 1].overlaps(&iterates[start - 1 + period]) {
            start -= 1;
        }
        let comparisons = len - period - start;
        if comparisons >= period.max(2) && start + period <= len {
            let all = (start..len - period).all(|k| iterates[k].overlaps(&iterates[k + period]));
            if all {
                return Ok(CfClassification {
                    kind: CfKind::Periodic {
                        preperiod: start,
                        period,
                    },
                    evidence,
                });
            }
        }
    }
    Ok(CfClassification {
        kind: CfKind::Unresolved,
        evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{make_rational, Precision};

    fn tol() -> Rational {
        make_rational(1, 1_000_000).unwrap()
    }

    #[test]
    fn dyadic_rational() {
        let x = BallReal::from_rational(&make_rational(13, 4).unwrap(), Precision::new(64).unwrap());
        let c = classify(&x, 10, &tol()).unwrap();
        assert_eq!(c.kind, CfKind::Rational);
        assert_eq!(c.evidence, 2);
    }

    #[test]
    fn sqrt2_has_period_one() {
        let p = Precision::new(512).unwrap();
        let x = BallReal::sqrt_of(&Rational::from_integer(2), p).unwrap();
        let c = classify(&x, 40, &tol()).unwrap();
        assert_eq!(
            c.kind,
            CfKind::Periodic {
                preperiod: 0,
                period: 1
            }
        );
    }

    #[test]
    fn sqrt3_has_period_two() {
        // sqrt(3) = [1; 1, 2, 1, 2, ...]
        let p = Precision::new(512).unwrap();
        let x = BallReal::sqrt_of(&Rational::from_integer(3), p).unwrap();
        let c = classify(&x, 40, &tol()).unwrap();
        assert_eq!(
            c.kind,
            CfKind::Periodic {
                preperiod: 0,
                period: 2
            }
        );
    }

    #[test]
    fn preperiod_detected() {
        // (1 + sqrt 2)/ 7 has a preperiodic part before its cycle starts.
        let p = Precision::new(1024).unwrap();
        let s2 = BallReal::sqrt_of(&Rational::from_integer(2), p).unwrap();
        let x = s2
            .add_ball(&BallReal::from_integer(1, p))
            .mul_rational(&make_rational(1, 7).unwrap());
        let c = classify(&x, 60, &tol()).unwrap();
        match c.kind {
            CfKind::Periodic { preperiod, period } => {
                assert!(preperiod >= 1, "preperiod {preperiod}");
                assert!(period >= 1);
            }
            other => panic!("expected periodic, got {other:?}"),
        }
    }

    #[test]
    fn needs_two_iterates() {
        let x = BallReal::from_integer(1, Precision::new(64).unwrap());
        assert!(classify(&x, 1, &tol()).is_err());
    }
}
