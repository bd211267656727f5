//! Influence of variables and sets, total influence and sensitivity.
//!
//! Every quantity is computed by counting disagreeing input pairs and, where a
//! second route exists (Fourier weight, autocorrelation), that route is
//! available for exact cross-checking.

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::spectral::{AutocorrelationTable, Spectrum};
use crate::truth_table::{SubsetMask, TruthTable};

/// Per-variable influences and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfluenceProfile {
    pub n: usize,
    pub per_variable: Vec<Dyadic>,
    pub total: Dyadic,
}

fn check_var(tt_n: usize, i: usize) -> Result<()> {
    if i == 0 || i > tt_n {
        return Err(Error::VariableOutOfRange { index: i, n: tt_n });
    }
    Ok(())
}

/// `Inf_i(f) = Pr_x[f(x) != f(x^{⊕i})]`, by flip counting.
pub fn influence_var(tt: &TruthTable, i: usize) -> Result<Dyadic> {
    check_var(tt.n(), i)?;
    Ok(Dyadic::new(tt.flip_disagreements(i) as i128, tt.n() as u32))
}

/// `Inf_i(f) = Σ_{S ∋ i} f̂²(S)`.
pub fn influence_var_fourier(spec: &Spectrum, i: usize) -> Result<Dyadic> {
    check_var(spec.n(), i)?;
    let bit = 1usize << (i - 1);
    let weight: i128 = spec
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(s, _)| s & bit != 0)
        .map(|(_, &w)| (w as i128) * (w as i128))
        .sum();
    Ok(Dyadic::new(weight, 2 * spec.n() as u32))
}

/// Flip-count influence, verified against the Fourier form.
pub fn influence_var_checked(tt: &TruthTable, spec: &Spectrum, i: usize) -> Result<Dyadic> {
    let flip = influence_var(tt, i)?;
    let fourier = influence_var_fourier(spec, i)?;
    if flip != fourier {
        return Err(Error::InconsistentInfluence {
            what: format!("Inf_{i}"),
            flip: flip.to_string(),
            fourier: fourier.to_string(),
        });
    }
    Ok(flip)
}

/// `Inf_S(f) = Pr_x[f(x) != f(x^{⊕S})]`. The empty set has influence 0.
pub fn influence_set(tt: &TruthTable, s: SubsetMask) -> Result<Dyadic> {
    let s = SubsetMask::new(s.0, tt.n())?;
    if s.is_empty() {
        return Ok(Dyadic::ZERO);
    }
    if s.len() == 1 {
        return influence_var(tt, s.vars().next().unwrap_or(1));
    }
    let shift = s.0 as usize;
    let count = (0..tt.len()).filter(|&j| tt.bit(j) != tt.bit(j ^ shift)).count();
    Ok(Dyadic::new(count as i128, tt.n() as u32))
}

/// `Inf_S(f) = 1/2 - C(w_S) / 2^{n+1}`, where `w_S` negates exactly the
/// coordinates in `S`.
pub fn influence_set_from_autocorrelation(ac: &AutocorrelationTable, s: SubsetMask) -> Dyadic {
    Dyadic::HALF - Dyadic::new(ac.get(s) as i128, ac.n() as u32 + 1)
}

/// `I(f) = Σ_i Inf_i(f)`.
pub fn total_influence(tt: &TruthTable) -> Dyadic {
    let flips: u64 = (1..=tt.n()).map(|i| tt.flip_disagreements(i)).sum();
    Dyadic::new(flips as i128, tt.n() as u32)
}

/// `I(f) = Σ_S |S| f̂²(S)`.
pub fn total_influence_fourier(spec: &Spectrum) -> Dyadic {
    let weight: i128 = spec
        .coeffs()
        .iter()
        .enumerate()
        .map(|(s, &w)| s.count_ones() as i128 * (w as i128) * (w as i128))
        .sum();
    Dyadic::new(weight, 2 * spec.n() as u32)
}

/// `s(f, x) = #{i : f(x) != f(x^{⊕i})}` at input index `j`.
pub fn sensitivity(tt: &TruthTable, j: usize) -> Result<u32> {
    if j >= tt.len() {
        return Err(Error::IndexOutOfRange { index: j, n: tt.n() });
    }
    let here = tt.bit(j);
    Ok((0..tt.n()).filter(|b| tt.bit(j ^ 1 << b) != here).count() as u32)
}

/// `s(f) = 2^{-n} Σ_x s(f, x)`, summed point by point.
pub fn average_sensitivity(tt: &TruthTable) -> Dyadic {
    let sum: u64 = (0..tt.len())
        .map(|j| sensitivity(tt, j).expect("index in range") as u64)
        .sum();
    Dyadic::new(sum as i128, tt.n() as u32)
}

impl InfluenceProfile {
    pub fn compute(tt: &TruthTable) -> Self {
        let per_variable: Vec<Dyadic> = (1..=tt.n())
            .map(|i| Dyadic::new(tt.flip_disagreements(i) as i128, tt.n() as u32))
            .collect();
        let total = per_variable.iter().copied().sum();
        InfluenceProfile {
            n: tt.n(),
            per_variable,
            total,
        }
    }

    /// As [`InfluenceProfile::compute`], additionally requiring the Fourier
    /// forms of every `Inf_i` and of `I(f)` to agree exactly.
    pub fn compute_checked(tt: &TruthTable, spec: &Spectrum) -> Result<Self> {
        let per_variable = (1..=tt.n())
            .map(|i| influence_var_checked(tt, spec, i))
            .collect::<Result<Vec<_>>>()?;
        let total: Dyadic = per_variable.iter().copied().sum();
        let fourier = total_influence_fourier(spec);
        if total != fourier {
            return Err(Error::InconsistentInfluence {
                what: "I(f)".into(),
                flip: total.to_string(),
                fourier: fourier.to_string(),
            });
        }
        Ok(InfluenceProfile {
            n: tt.n(),
            per_variable,
            total,
        })
    }
}
