use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Working precision in bits. At least 64.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Precision {
    bits: u32,
}

impl Precision {
    pub const MIN_BITS: u32 = 64;
    pub const DEFAULT_BITS: u32 = 256;

    pub fn new(bits: u32) -> Result<Self> {
        if bits < Self::MIN_BITS {
            return Err(Error::Domain(format!(
                "precision must be at least {} bits, got {bits}",
                Self::MIN_BITS
            )));
        }
        Ok(Precision { bits })
    }

    /// Enough bits to resolve `digits` decimal places plus a 64-bit guard.
    pub fn for_decimal_digits(digits: u32) -> Self {
        let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 64;
        Precision {
            bits: bits.max(Self::MIN_BITS),
        }
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    /// `floor(bits * log10(2))`, computed exactly as the largest `d` with
    /// `10^d <= 2^bits`.
    pub fn decimal_digits(self) -> u32 {
        let two_pow = BigUint::one() << self.bits;
        let mut d = (self.bits as f64 * std::f64::consts::LOG10_2) as u32;
        let ten = BigUint::from(10u32);
        while num_traits::pow(ten.clone(), (d + 1) as usize) <= two_pow {
            d += 1;
        }
        while d > 0 && num_traits::pow(ten.clone(), d as usize) > two_pow {
            d -= 1;
        }
        d
    }

    pub fn max(self, other: Precision) -> Precision {
        if self.bits >= other.bits {
            self
        } else {
            other
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            bits: Self::DEFAULT_BITS,
        }
    }
}
