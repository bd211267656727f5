//! Exact spectral and influence analysis of Boolean functions.
//!
//! Functions are bit-packed [`TruthTable`]s over `{-1,1}^n`. Spectra are
//! integer arrays, influences are exact [`Dyadic`] rationals, and class
//! decisions (bent, plateaued, SAC, PC, monotone, threshold) are exact. The
//! [`harness`] module runs the census and bound experiments.
//!
//! The numeric kernels that need a field are generic over [`Scalar`]
//! (`f32`, `f64`, or the exact [`Rational`]); the aliases below fix the
//! instantiations used by the threshold decisions.

pub mod circuits;
pub mod classify;
pub mod dyadic;
pub mod error;
pub mod generate;
pub mod harness;
pub mod influence;
pub mod lp;
pub mod scalar;
pub mod spectral;
pub mod threshold;
pub mod truth_table;

pub use circuits::{parse_circuit, Circuit};
pub use classify::{classify, BentVerdict, ClassReport};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use influence::InfluenceProfile;
pub use scalar::Scalar;
pub use spectral::{wht, AutocorrelationTable, Spectrum};
pub use threshold::{is_ltf, is_ptf, ThresholdCertificate, ThresholdVerdict};
pub use truth_table::{SubsetMask, TruthTable};

/// Largest supported variable count.
pub const MAX_VARS: usize = 20;

/// Exact rational scalar.
pub type Rational = num_rational::BigRational;
/// Simplex over exact rationals.
pub type ExactSimplex = lp::Simplex<Rational>;
/// Simplex over `f64`, used as the fast first pass.
pub type FloatSimplex = lp::Simplex<f64>;

/// Run-length guard for the exhaustive experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Budget {
    #[default]
    Standard,
    /// Enables the n=5 census and the n=6 monotone enumeration.
    Long,
}
