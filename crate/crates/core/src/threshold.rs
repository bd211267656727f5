//! Linear and polynomial threshold recognition with exact certificates.
//!
//! `f` is a degree-`d` PTF iff some `p(x) = Σ_{|S|<=d} w_S χ_S(x)` has
//! `p(x) > 0` where `f(x) = 1` and `p(x) <= 0` where `f(x) = -1`
//! (`sign(0) = -1`). Scaling lets the strict side be written `p(x) >= 1`.
//! By Farkas' lemma exactly one of these holds:
//!
//! * weights `w` with the sign pattern above, or
//! * multipliers `y >= 0` with `Σ_x y_x f(x) χ_S(x) = 0` for all `|S| <= d`
//!   and `Σ_{f(x)=1} y_x > 0`.
//!
//! The solver searches the multiplier system (one row per monomial plus one,
//! one column per input). Feasible means non-member; infeasible yields the
//! weights from the phase-one duals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lp::{crossover, Feasibility, Simplex};
use crate::truth_table::{SubsetMask, TruthTable};
use crate::Rational;

pub const MAX_THRESHOLD_VARS: usize = 12;
pub const MAX_THRESHOLD_FEATURES: usize = 512;

/// Outcome of a threshold decision.
#[derive(Clone, Debug, PartialEq)]
pub enum ThresholdVerdict {
    /// `f(x) = sign(Σ_S w_S χ_S(x))`, weights aligned with the monomial list.
    Member { weights: Vec<Rational> },
    /// Farkas multipliers `(input index, y_x)` with `y_x > 0`.
    NonMember { witness: Vec<(usize, Rational)> },
}

/// Self-checking answer to "is `f` a degree-`d` threshold function".
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCertificate {
    pub degree: usize,
    /// Monomials ordered by degree, then by mask. For degree 1 this is
    /// `∅, {1}, ..., {n}`, so weights read `w_0, w_1, ..., w_n`.
    pub monomials: Vec<SubsetMask>,
    pub verdict: ThresholdVerdict,
}

/// How the final certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolvePath {
    FloatCrossover,
    Exact,
}

/// All subsets of `[n]` with at most `d` elements, by degree then mask.
pub fn monomials(n: usize, d: usize) -> Vec<SubsetMask> {
    let mut all: Vec<SubsetMask> = (0u32..1 << n)
        .filter(|m| m.count_ones() as usize <= d)
        .map(SubsetMask)
        .collect();
    all.sort_by_key(|m| (m.len(), m.0));
    all
}

#[inline]
fn chi(s: SubsetMask, x: usize) -> i64 {
    if (s.0 as usize & x).count_ones() % 2 == 1 {
        -1
    } else {
        1
    }
}

pub fn is_ltf(tt: &TruthTable) -> Result<ThresholdCertificate> {
    is_ptf(tt, 1)
}

pub fn is_ptf(tt: &TruthTable, degree: usize) -> Result<ThresholdCertificate> {
    is_ptf_with_path(tt, degree).map(|(c, _)| c)
}

/// As [`is_ptf`], also reporting whether the float solve plus exact
/// crossover sufficed or the exact simplex was needed.
pub fn is_ptf_with_path(tt: &TruthTable, degree: usize) -> Result<(ThresholdCertificate, SolvePath)> {
    let n = tt.n();
    let monos = monomials(n, degree);
    if n > MAX_THRESHOLD_VARS || monos.len() > MAX_THRESHOLD_FEATURES {
        return Err(Error::ThresholdTooLarge {
            n,
            features: monos.len(),
            max_n: MAX_THRESHOLD_VARS,
            max_features: MAX_THRESHOLD_FEATURES,
        });
    }
    let (a, b) = multiplier_system(tt, &monos);

    let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect();
    let bf: Vec<f64> = b.iter().map(|&v| v as f64).collect();
    let mut float = Simplex::new(&af, &bf);
    let ar: Vec<Vec<Rational>> = a
        .iter()
        .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
        .collect();
    let br: Vec<Rational> = b.iter().map(|&v| Rational::from_integer(v.into())).collect();

    if float.solve().is_some() {
        if let Some(outcome) = crossover(&ar, &br, float.basis()) {
            let cert = certificate(degree, &monos, outcome);
            if cert.verify(tt) {
                return Ok((cert, SolvePath::FloatCrossover));
            }
        }
    }
    let outcome = Simplex::new(&ar, &br)
        .solve()
        .expect("exact simplex terminates under Bland's rule");
    let cert = certificate(degree, &monos, outcome);
    assert!(cert.verify(tt), "exact threshold certificate failed re-verification");
    Ok((cert, SolvePath::Exact))
}

/// Rows: one per monomial (`f(x) χ_S(x)`), then the indicator of `f(x) = 1`.
fn multiplier_system(tt: &TruthTable, monos: &[SubsetMask]) -> (Vec<Vec<i64>>, Vec<i64>) {
    let len = tt.len();
    let mut a: Vec<Vec<i64>> = monos
        .iter()
        .map(|&s| (0..len).map(|x| tt.value(x) as i64 * chi(s, x)).collect())
        .collect();
    a.push((0..len).map(|x| i64::from(tt.value(x) == 1)).collect());
    let mut b = vec![0i64; monos.len()];
    b.push(1);
    (a, b)
}

fn certificate(
    degree: usize,
    monos: &[SubsetMask],
    outcome: Feasibility<Rational>,
) -> ThresholdCertificate {
    let verdict = match outcome {
        Feasibility::Feasible { x } => ThresholdVerdict::NonMember {
            witness: x
                .into_iter()
                .enumerate()
                .filter(|(_, y)| !y.is_zero())
                .collect(),
        },
        Feasibility::Infeasible { farkas } => {
            let m = monos.len();
            let last = farkas[m].clone();
            let weights: Vec<Rational> = if last.is_positive() {
                farkas[..m].iter().map(|p| -p / &last).collect()
            } else {
                farkas[..m].iter().map(|p| -p.clone()).collect()
            };
            ThresholdVerdict::Member {
                weights: primitive_integer(weights),
            }
        }
    };
    ThresholdCertificate {
        degree,
        monomials: monos.to_vec(),
        verdict,
    }
}

/// Positive rescaling to coprime integers (sign pattern is unchanged).
fn primitive_integer(weights: Vec<Rational>) -> Vec<Rational> {
    let lcm = weights
        .iter()
        .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
    let ints: Vec<BigInt> = weights.iter().map(|w| (w * &lcm).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if gcd.is_zero() {
        return ints.into_iter().map(Rational::from_integer).collect();
    }
    ints.into_iter().map(|v| Rational::from_integer(v / &gcd)).collect()
}

impl ThresholdCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, ThresholdVerdict::Member { .. })
    }

    /// Exact re-verification against `tt`.
    pub fn verify(&self, tt: &TruthTable) -> bool {
        if self.monomials.iter().any(|m| m.0 as usize >= tt.len()) {
            return false;
        }
        match &self.verdict {
            ThresholdVerdict::Member { weights } => {
                weights.len() == self.monomials.len()
                    && (0..tt.len()).all(|x| {
                        let p = self
                            .monomials
                            .iter()
                            .zip(weights)
                            .fold(Rational::zero(), |acc, (&s, w)| {
                                if chi(s, x) > 0 {
                                    acc + w
                                } else {
                                    acc - w
                                }
                            });
                        p.is_positive() == (tt.value(x) == 1)
                    })
            }
            ThresholdVerdict::NonMember { witness } => {
                if witness.iter().any(|(x, y)| *x >= tt.len() || !y.is_positive()) {
                    return false;
                }
                let balanced = self.monomials.iter().all(|&s| {
                    witness
                        .iter()
                        .fold(Rational::zero(), |acc, (x, y)| {
                            if tt.value(*x) as i64 * chi(s, *x) > 0 {
                                acc + y
                            } else {
                                acc - y
                            }
                        })
                        .is_zero()
                });
                balanced && witness.iter().any(|(x, _)| tt.value(*x) == 1)
            }
        }
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl Serialize for ThresholdCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("ThresholdCertificate", 5)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("monomials", &self.monomials.iter().map(|m| m.0).collect::<Vec<_>>())?;
        match &self.verdict {
            ThresholdVerdict::Member { weights } => {
                st.serialize_field("verdict", "member")?;
                st.serialize_field(
                    "weights",
                    &weights.iter().map(rational_string).collect::<Vec<_>>(),
                )?;
                st.serialize_field("witness", &Option::<()>::None)?;
            }
            ThresholdVerdict::NonMember { witness } => {
                st.serialize_field("verdict", "non-member")?;
                st.serialize_field("weights", &Option::<()>::None)?;
                st.serialize_field(
                    "witness",
                    &witness
                        .iter()
                        .map(|(x, y)| (x, rational_string(y)))
                        .collect::<Vec<_>>(),
                )?;
            }
        }
        st.end()
    }
}
