//! Scalar abstraction for the numeric kernels that are not integer-exact by
//! nature: the simplex used for threshold decisions and the entropy helpers.
//!
//! Spectra, influences and counts never go through this trait; they are
//! machine integers and [`crate::Dyadic`] values.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// Ordered field element usable by [`crate::lp::Simplex`].
///
/// Exact implementations report a zero tolerance; floating implementations
/// report the pivot/feasibility tolerance they want the solver to use.
pub trait Scalar: Num + Signed + Clone + Debug + PartialOrd + FromPrimitive {
    /// True when arithmetic is exact (no rounding).
    const EXACT: bool;

    fn tolerance() -> Self;

    fn to_f64_lossy(&self) -> f64;

    /// Exact rational value, or `None` for non-finite floats.
    fn to_rational(&self) -> Option<BigRational>;

    fn is_pos(&self) -> bool {
        *self > Self::tolerance()
    }

    fn is_neg(&self) -> bool {
        *self < -Self::tolerance()
    }

    fn is_negligible(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-9
    }

    fn to_f64_lossy(&self) -> f64 {
        *self
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn tolerance() -> Self {
        1e-5
    }

    fn to_f64_lossy(&self) -> f64 {
        f64::from(*self)
    }

    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn tolerance() -> Self {
        BigRational::zero()
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// Rational from an integer pair.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Binary entropy `h(p) = -p log2 p - (1-p) log2 (1-p)` with `0 log 0 = 0`.
pub fn binary_entropy<T: Float>(p: T) -> T {
    let term = |q: T| {
        if q <= T::zero() {
            T::zero()
        } else {
            -q * q.log2()
        }
    };
    term(p) + term(T::one() - p)
}

/// Inverse of [`binary_entropy`] on `[0, 1/2]`, by bisection until the
/// bracket is narrower than `tol`. Inputs are clamped to `[0, 1]`.
pub fn inverse_binary_entropy<T: Float>(y: T, tol: T) -> T {
    let half = T::from(0.5).unwrap();
    if y <= T::zero() {
        return T::zero();
    }
    if y >= T::one() {
        return half;
    }
    let (mut lo, mut hi) = (T::zero(), half);
    while hi - lo > tol {
        let mid = (lo + hi) * half;
        if binary_entropy(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo + hi) * half
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_endpoints() {
        assert_eq!(binary_entropy(0.0f64), 0.0);
        assert_eq!(binary_entropy(1.0f64), 0.0);
        assert!((binary_entropy(0.5f64) - 1.0).abs() < 1e-15);
        assert!((binary_entropy(0.5f32) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn inverse_binary_entropy_round_trips() {
        assert!((inverse_binary_entropy(1.0f64, 1e-12) - 0.5).abs() < 1e-12);
        assert_eq!(inverse_binary_entropy(0.0f64, 1e-12), 0.0);
        for &p in &[0.01f64, 0.1, 0.2, 0.3, 0.45] {
            let back = inverse_binary_entropy(binary_entropy(p), 1e-13);
            assert!((back - p).abs() < 1e-12, "{p} -> {back}");
        }
    }

    #[test]
    fn tolerances() {
        assert!(BigRational::tolerance().is_zero());
        assert!(ratio(1, 3).is_pos());
        assert!(1e-12f64.is_negligible());
        assert_eq!(ratio(1, 4).to_f64_lossy(), 0.25);
        assert_eq!(0.25f64.to_rational(), Some(ratio(1, 4)));
    }
}
