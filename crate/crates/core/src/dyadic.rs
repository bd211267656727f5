//! Exact rationals of the form `a / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One};
use serde::{Deserialize, Serialize};

/// Exact dyadic rational `numerator / 2^exponent`, always kept canonical:
/// the numerator is odd, or the value is zero with exponent zero.
///
/// Influences, total influence and normalized autocorrelations all live here.
/// Numerators are 128-bit, which covers every quantity derived from tables
/// with at most 20 variables (including squares of total influence).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "DyadicRepr", from = "DyadicRepr")]
pub struct Dyadic {
    numerator: i128,
    exponent: u32,
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic {
        numerator: 0,
        exponent: 0,
    };
    pub const ONE: Dyadic = Dyadic {
        numerator: 1,
        exponent: 0,
    };
    pub const HALF: Dyadic = Dyadic {
        numerator: 1,
        exponent: 1,
    };

    pub fn new(numerator: i128, exponent: u32) -> Self {
        if numerator == 0 {
            return Self::ZERO;
        }
        let shift = numerator.trailing_zeros().min(exponent);
        Dyadic {
            numerator: numerator >> shift,
            exponent: exponent - shift,
        }
    }

    pub fn from_int(value: i128) -> Self {
        Dyadic::new(value, 0)
    }

    pub fn numerator(&self) -> i128 {
        self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator == 0
    }

    /// Multiply by `2^k` (k may be negative).
    pub fn scale_pow2(self, k: i32) -> Self {
        if k >= 0 {
            let k = k as u32;
            let drop = k.min(self.exponent);
            Dyadic::new(self.numerator << (k - drop), self.exponent - drop)
        } else {
            Dyadic::new(self.numerator, self.exponent + k.unsigned_abs())
        }
    }

    /// Numerator after bringing `self` to exponent `e >= self.exponent`.
    fn numerator_at(&self, e: u32) -> i128 {
        self.numerator << (e - self.exponent)
    }

    pub fn to_float<T: Float>(&self) -> T {
        let num = T::from(self.numerator).unwrap();
        let den = T::from(2.0).unwrap().powi(self.exponent as i32);
        num / den
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float::<f64>()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.numerator),
            BigInt::one() << self.exponent as usize,
        )
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Self::ZERO
    }
}

impl From<i64> for Dyadic {
    fn from(value: i64) -> Self {
        Dyadic::from_int(value as i128)
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let e = self.exponent.max(other.exponent);
        self.numerator_at(e).cmp(&other.numerator_at(e))
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: Dyadic) -> Dyadic {
        let e = self.exponent.max(rhs.exponent);
        Dyadic::new(self.numerator_at(e) + rhs.numerator_at(e), e)
    }
}

impl Sub for Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: Dyadic) -> Dyadic {
        self + (-rhs)
    }
}

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            numerator: -self.numerator,
            exponent: self.exponent,
        }
    }
}

impl Mul for Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: Dyadic) -> Dyadic {
        Dyadic::new(self.numerator * rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "{}/{}", self.numerator, 1u128 << self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dyadic({self})")
    }
}

/// Wire form: exact pair plus a decimal approximation for readers.
#[derive(Serialize, Deserialize)]
struct DyadicRepr {
    numerator: i128,
    exponent: u32,
    #[serde(default)]
    approx: f64,
}

impl From<Dyadic> for DyadicRepr {
    fn from(d: Dyadic) -> Self {
        DyadicRepr {
            numerator: d.numerator,
            exponent: d.exponent,
            approx: d.to_f64(),
        }
    }
}

impl From<DyadicRepr> for Dyadic {
    fn from(r: DyadicRepr) -> Self {
        Dyadic::new(r.numerator, r.exponent)
    }
}
