//! Membership decisions for the bent, plateaued, SAC, PC, monotone and
//! threshold classes.

use serde::Serialize;

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::influence::total_influence;
use crate::scalar::inverse_binary_entropy;
use crate::spectral::{autocorrelation_from_spectrum, wht, Spectrum};
use crate::threshold::{is_ltf, ThresholdCertificate, MAX_THRESHOLD_VARS};
use crate::truth_table::TruthTable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BentVerdict {
    Yes,
    No,
    /// Bentness is only defined for even `n`.
    NotApplicable,
}

/// Every class verdict for one function.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassReport {
    pub bent: BentVerdict,
    pub plateaued_order: Option<u32>,
    pub sac: bool,
    pub sac_order: Option<u32>,
    pub pc_degree: u32,
    pub monotone: bool,
    /// `None` above the threshold solver's size limit.
    pub ltf: Option<ThresholdCertificate>,
    pub chow: Vec<i64>,
}

/// Bent iff `n` is even and `|W(S)| = 2^{n/2}` for every `S ⊆ [n]`.
pub fn is_bent(spec: &Spectrum) -> BentVerdict {
    let n = spec.n();
    if n % 2 == 1 {
        return BentVerdict::NotApplicable;
    }
    let flat = 1i64 << (n / 2);
    if spec.coeffs().iter().all(|w| w.abs() == flat) {
        BentVerdict::Yes
    } else {
        BentVerdict::No
    }
}

/// The `k` for which every `W(S) ∈ {0, ±2^{(n+k)/2}}`, if any.
pub fn plateaued_order(spec: &Spectrum) -> Option<u32> {
    let n = spec.n() as u32;
    let peak = spec.coeffs().iter().map(|w| w.unsigned_abs()).max()?;
    if !peak.is_power_of_two() {
        return None;
    }
    let e = peak.trailing_zeros();
    if 2 * e < n || !spec.coeffs().iter().all(|w| *w == 0 || w.unsigned_abs() == peak) {
        return None;
    }
    Some(2 * e - n)
}

/// SAC: every `Inf_i = 1/2`.
pub fn satisfies_sac(tt: &TruthTable) -> bool {
    let half = (tt.len() / 2) as u64;
    (1..=tt.n()).all(|i| tt.flip_disagreements(i) == half)
}

/// SAC(k): every restriction fixing `k` variables satisfies SAC. Requires
/// `k <= n - 2`.
pub fn satisfies_sac_order(tt: &TruthTable, k: usize) -> Result<bool> {
    let n = tt.n();
    if n < 2 || k > n - 2 {
        return Err(Error::Parameter {
            name: "k",
            value: k.to_string(),
            reason: format!("SAC order must satisfy 0 <= k <= n-2 (n={n})"),
        });
    }
    if k == 0 {
        return Ok(satisfies_sac(tt));
    }
    for mask in 1usize..1 << n {
        if mask.count_ones() as usize != k {
            continue;
        }
        let vars: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
        for vals in 0usize..1 << k {
            let bits = vars
                .iter()
                .enumerate()
                .fold(0usize, |acc, (t, &b)| acc | ((vals >> t) & 1) << b);
            if !satisfies_sac(&tt.restrict_masked(mask, bits)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Largest `k <= n - 2` with SAC(k); `None` when SAC itself fails.
pub fn max_sac_order(tt: &TruthTable) -> Option<u32> {
    let n = tt.n();
    if n < 2 || !satisfies_sac(tt) {
        return None;
    }
    (1..=n - 2)
        .rev()
        .find(|&k| satisfies_sac_order(tt, k).unwrap_or(false))
        .map_or(Some(0), |k| Some(k as u32))
}

/// Largest `k` with `Inf_S = 1/2` (equivalently `C(w_S) = 0`) for all
/// `1 <= |S| <= k`; 0 if some singleton fails.
pub fn max_pc_degree(tt: &TruthTable) -> u32 {
    max_pc_degree_from_spectrum(&wht(tt))
}

pub fn max_pc_degree_from_spectrum(spec: &Spectrum) -> u32 {
    let ac = autocorrelation_from_spectrum(spec);
    let n = spec.n();
    let mut by_weight: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for u in 1..1usize << n {
        by_weight[u.count_ones() as usize].push(u);
    }
    for (k, shifts) in by_weight.iter().enumerate().skip(1) {
        if shifts.iter().any(|&u| ac.values()[u] != 0) {
            return (k - 1) as u32;
        }
    }
    n as u32
}

/// Monotone over `-1 < 1`: `f(x) <= f(x^{⊕i})` whenever `x_i = -1`.
pub fn is_monotone(tt: &TruthTable) -> bool {
    (0..tt.n()).all(|b| {
        (0..tt.len())
            .filter(|j| j >> b & 1 == 1)
            // x_i = -1 at j; violation is f(j) = 1 with f(j without bit) = -1.
            .all(|j| tt.bit(j) || !tt.bit(j ^ 1 << b))
    })
}

pub fn classify(tt: &TruthTable) -> Result<ClassReport> {
    let spec = wht(tt);
    classify_with_spectrum(tt, &spec)
}

pub fn classify_with_spectrum(tt: &TruthTable, spec: &Spectrum) -> Result<ClassReport> {
    let ltf = if tt.n() <= MAX_THRESHOLD_VARS {
        Some(is_ltf(tt)?)
    } else {
        None
    };
    let sac = satisfies_sac(tt);
    Ok(ClassReport {
        bent: is_bent(spec),
        plateaued_order: plateaued_order(spec),
        sac,
        sac_order: if sac { max_sac_order(tt) } else { None },
        pc_degree: max_pc_degree_from_spectrum(spec),
        monotone: is_monotone(tt),
        ltf,
        chow: spec.chow(),
    })
}

/// Membership in `LHE_c` and the entropy/influence inequality
/// `H(f) <= (1 + c) / h^{-1}(c^2) · I(f)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LheReport {
    pub c: f64,
    pub entropy: f64,
    pub total_influence: Dyadic,
    /// `H(f) >= c n`.
    pub member: bool,
    pub bound: f64,
    /// Inequality holds (checked with a 1e-12 slack).
    pub holds: bool,
}

pub const LHE_BISECTION_TOL: f64 = 1e-12;

pub fn lhe_bound(tt: &TruthTable, c: f64) -> Result<LheReport> {
    if !(c > 0.0 && c < 0.5) {
        return Err(Error::Parameter {
            name: "c",
            value: c.to_string(),
            reason: "must lie in (0, 1/2)".into(),
        });
    }
    let entropy = wht(tt).fourier_entropy();
    let total = total_influence(tt);
    let factor = (1.0 + c) / inverse_binary_entropy(c * c, LHE_BISECTION_TOL);
    let bound = factor * total.to_f64();
    Ok(LheReport {
        c,
        entropy,
        total_influence: total,
        member: entropy >= c * tt.n() as f64,
        bound,
        holds: entropy <= bound + 1e-12,
    })
}
