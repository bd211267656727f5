//! Constructions and seeded random models.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; independent substreams select the ChaCha stream
//! number, so task `i` of a parallel run always sees the same variates.
//! Uniform weights are `2u - 1` for a 53-bit uniform `u ∈ [0, 1)`. Normal
//! weights use the Box–Muller cosine branch, `sqrt(-2 ln u1) cos(2π u2)` with
//! `u1 ∈ (0, 1]`.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{is_bent, BentVerdict};
use crate::error::{Error, Result};
use crate::spectral::wht;
use crate::threshold::monomials;
use crate::truth_table::TruthTable;
use crate::Budget;

/// Largest `n` accepted by the constructions and the random models.
pub const MAX_GENERATED_VARS: usize = 16;

/// Maiorana–McFarland parameters: `f(x, y) = (-1)^{<x, π(y)> ⊕ g(y)}` on
/// `n = 2m` variables, `x` the low `m` variables and `y` the high `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MmSpec {
    pub m: usize,
    pub pi: Vec<u32>,
    pub g: TruthTable,
}

impl MmSpec {
    /// Identity permutation and `g ≡ 0` (the inner-product function).
    pub fn identity(m: usize) -> Self {
        MmSpec {
            m,
            pi: (0..1u32 << m).collect(),
            g: TruthTable::constant(m.max(1), 1).expect("m >= 1"),
        }
    }

    /// Uniform permutation (Fisher–Yates) and uniform `g`.
    pub fn random(m: usize, seed: u64) -> Result<Self> {
        if m == 0 || 2 * m > MAX_GENERATED_VARS {
            return Err(Error::Parameter {
                name: "m",
                value: m.to_string(),
                reason: format!("need 1 <= 2m <= {MAX_GENERATED_VARS}"),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pi: Vec<u32> = (0..1u32 << m).collect();
        for i in (1..pi.len()).rev() {
            let j = rng.gen_range(0..=i);
            pi.swap(i, j);
        }
        let g = random_table(m, &mut rng)?;
        Ok(MmSpec { m, pi, g })
    }
}

pub fn mm_bent(spec: &MmSpec) -> Result<TruthTable> {
    let m = spec.m;
    if m == 0 || 2 * m > MAX_GENERATED_VARS {
        return Err(Error::Parameter {
            name: "m",
            value: m.to_string(),
            reason: format!("need 1 <= 2m <= {MAX_GENERATED_VARS}"),
        });
    }
    let size = 1usize << m;
    if spec.g.n() != m {
        return Err(Error::Parameter {
            name: "g",
            value: spec.g.n().to_string(),
            reason: format!("g must have m={m} variables"),
        });
    }
    let mut seen = vec![false; size];
    if spec.pi.len() != size
        || !spec
            .pi
            .iter()
            .all(|&v| (v as usize) < size && !std::mem::replace(&mut seen[v as usize], true))
    {
        return Err(Error::NotPermutation(size));
    }
    TruthTable::from_bits_fn(2 * m, |j| {
        let (x, y) = (j & (size - 1), j >> m);
        let inner = (x as u32 & spec.pi[y]).count_ones() % 2 == 1;
        inner ^ spec.g.bit(y)
    })
}

/// `f(x, y) = g(x)` with `k` ignored high-indexed variables appended.
pub fn padded_plateaued(bent_g: &TruthTable, k: usize) -> Result<TruthTable> {
    if is_bent(&wht(bent_g)) != BentVerdict::Yes {
        return Err(Error::NotBent);
    }
    let n = bent_g.n() + k;
    if n > MAX_GENERATED_VARS {
        return Err(Error::Parameter {
            name: "k",
            value: k.to_string(),
            reason: format!("n = {n} exceeds {MAX_GENERATED_VARS}"),
        });
    }
    let low = bent_g.len() - 1;
    TruthTable::from_bits_fn(n, |j| bent_g.bit(j & low))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightDistribution {
    /// Uniform on `[-1, 1]`.
    Uniform,
    StandardNormal,
    /// Deterministic weights, for tests and for replaying a stored instance.
    Fixed(Vec<f64>),
}

/// Seeded distribution over threshold weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomModel {
    pub distribution: WeightDistribution,
    pub seed: u64,
    pub stream: u64,
}

impl RandomModel {
    pub fn uniform(seed: u64) -> Self {
        RandomModel {
            distribution: WeightDistribution::Uniform,
            seed,
            stream: 0,
        }
    }

    pub fn normal(seed: u64) -> Self {
        RandomModel {
            distribution: WeightDistribution::StandardNormal,
            seed,
            stream: 0,
        }
    }

    pub fn fixed(weights: Vec<f64>) -> Self {
        RandomModel {
            distribution: WeightDistribution::Fixed(weights),
            seed: 0,
            stream: 0,
        }
    }

    /// Same model on an independent substream.
    pub fn with_stream(&self, stream: u64) -> Self {
        RandomModel {
            stream,
            ..self.clone()
        }
    }

    fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }

    fn sample(&self, count: usize) -> Result<Vec<f64>> {
        let mut rng = self.rng();
        match &self.distribution {
            WeightDistribution::Uniform => {
                Ok((0..count).map(|_| 2.0 * rng.gen::<f64>() - 1.0).collect())
            }
            WeightDistribution::StandardNormal => Ok((0..count)
                .map(|_| {
                    let u1 = 1.0 - rng.gen::<f64>();
                    let u2 = rng.gen::<f64>();
                    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
                })
                .collect()),
            WeightDistribution::Fixed(w) if w.len() == count => Ok(w.clone()),
            WeightDistribution::Fixed(w) => Err(Error::Parameter {
                name: "weights",
                value: w.len().to_string(),
                reason: format!("model needs {count} weights"),
            }),
        }
    }
}

/// `f(x) = sign(w_0 + Σ_i w_i x_i)`, `sign(0) = -1`. Weights are returned in
/// `w_0, w_1, ..., w_n` order.
pub fn random_ltf(n: usize, model: &RandomModel) -> Result<(TruthTable, Vec<f64>)> {
    random_ptf_with_weights(n, 1, model)
}

/// Sign of a polynomial with independent coefficients on every monomial of
/// degree at most `d`.
pub fn random_ptf(n: usize, d: usize, model: &RandomModel) -> Result<TruthTable> {
    if n > 14 || d == 0 || d > 4 {
        return Err(Error::Parameter {
            name: "d",
            value: format!("n={n}, d={d}"),
            reason: "random PTFs need n <= 14 and 1 <= d <= 4".into(),
        });
    }
    random_ptf_with_weights(n, d, model).map(|(t, _)| t)
}

/// Coefficients follow the order of [`monomials`]`(n, d)`.
pub fn random_ptf_with_weights(n: usize, d: usize, model: &RandomModel) -> Result<(TruthTable, Vec<f64>)> {
    if n == 0 || n > MAX_GENERATED_VARS {
        return Err(Error::VarCount(n));
    }
    let monos = monomials(n, d);
    let weights = model.sample(monos.len())?;
    let values = if d == 1 {
        affine_values(n, &weights)
    } else {
        let mut coeffs = vec![0.0f64; 1 << n];
        for (s, w) in monos.iter().zip(&weights) {
            coeffs[s.0 as usize] = *w;
        }
        float_butterfly(&mut coeffs);
        coeffs
    };
    let table = TruthTable::from_bits_fn(n, |j| values[j] <= 0.0)?;
    Ok((table, weights))
}

/// `w_0 + Σ w_i x_i` at every index, by doubling: negating `x_{b+1}`
/// subtracts `2 w_{b+1}`.
fn affine_values(n: usize, weights: &[f64]) -> Vec<f64> {
    let mut values = vec![0.0f64; 1 << n];
    values[0] = weights.iter().sum();
    for b in 0..n {
        let step = 2.0 * weights[b + 1];
        for j in 0..1usize << b {
            values[j | 1 << b] = values[j] - step;
        }
    }
    values
}

fn float_butterfly(data: &mut [f64]) {
    let mut h = 1;
    while h < data.len() {
        for block in data.chunks_exact_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

/// Every monotone function on `n` variables as single-word tables, built by
/// `f = (g_lo on x_n = +1, g_hi on x_n = -1)` with `g_hi ≤ g_lo` in the
/// `±1` order, i.e. `bits(g_lo) ⊆ bits(g_hi)`. `n = 6` needs [`Budget::Long`].
pub fn monotone_words(n: usize, budget: Budget) -> Result<Vec<u64>> {
    let max = match budget {
        Budget::Standard => 5,
        Budget::Long => 6,
    };
    if n == 0 {
        return Err(Error::VarCount(0));
    }
    if n > max {
        return Err(Error::Guard {
            what: "monotone enumeration",
            n,
            max,
            hint: if n == 6 { " (n=6 needs the long-run flag)" } else { "" },
        });
    }
    let mut level: Vec<u64> = vec![0, 1];
    for k in 1..=n {
        let half = 1u32 << (k - 1);
        let mut next = Vec::new();
        for &hi in &level {
            for &lo in &level {
                if lo & !hi == 0 {
                    next.push(lo | hi << half);
                }
            }
        }
        next.sort_unstable();
        level = next;
    }
    Ok(level)
}

pub fn enumerate_monotone(n: usize, budget: Budget) -> Result<impl Iterator<Item = TruthTable>> {
    let words = monotone_words(n, budget)?;
    Ok(words
        .into_iter()
        .map(move |w| TruthTable::from_word(n, w).expect("n <= 6")))
}

/// Uniform over all `2^{2^n}` tables.
pub fn random_function(n: usize, seed: u64) -> Result<TruthTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_table(n, &mut rng)
}

/// Uniform table on substream `stream` of `seed`.
pub fn random_function_stream(n: usize, seed: u64, stream: u64) -> Result<TruthTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    random_table(n, &mut rng)
}

fn random_table(n: usize, rng: &mut impl RngCore) -> Result<TruthTable> {
    if n == 0 || n > crate::MAX_VARS {
        return Err(Error::VarCount(n));
    }
    let words = if n <= 6 { 1 } else { 1 << (n - 6) };
    let mut w: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
    if n < 6 {
        w[0] &= (1u64 << (1 << n)) - 1;
    }
    TruthTable::from_words(n, w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{is_monotone, plateaued_order};
    use crate::dyadic::Dyadic;
    use crate::influence::total_influence;
    use crate::threshold::{is_ltf, is_ptf};

    #[test]
    fn mm_examples() {
        let f = mm_bent(&MmSpec::identity(1)).unwrap();
        assert_eq!(f, TruthTable::and_type(2).unwrap());
        let ip4 = mm_bent(&MmSpec::identity(2)).unwrap();
        assert_eq!(is_bent(&wht(&ip4)), BentVerdict::Yes);
        let mut spec = MmSpec::random(2, 7).unwrap();
        spec.pi = vec![1, 0, 2, 3];
        assert_eq!(is_bent(&wht(&mm_bent(&spec).unwrap())), BentVerdict::Yes);
        spec.pi = vec![1, 1, 2, 3];
        assert_eq!(mm_bent(&spec), Err(Error::NotPermutation(4)));
    }

    #[test]
    fn padded_examples() {
        let g2 = TruthTable::and_type(2).unwrap();
        let f = padded_plateaued(&g2, 1).unwrap();
        assert_eq!(plateaued_order(&wht(&f)), Some(1));
        assert_eq!(total_influence(&f), Dyadic::ONE);
        // Spectrum is g's doubled on the embedded masks and zero elsewhere.
        assert_eq!(wht(&f).coeffs(), [4, 4, 4, -4, 0, 0, 0, 0]);
        let g4 = mm_bent(&MmSpec::identity(2)).unwrap();
        assert_eq!(padded_plateaued(&g4, 0).unwrap(), g4);
        let f = padded_plateaued(&g2, 2).unwrap();
        assert_eq!(plateaued_order(&wht(&f)), Some(2));
        assert_eq!(total_influence(&f), Dyadic::ONE);
        assert_eq!(
            padded_plateaued(&TruthTable::parity(2).unwrap(), 1),
            Err(Error::NotBent)
        );
    }

    #[test]
    fn ltf_models() {
        let (t, w) = random_ltf(3, &RandomModel::fixed(vec![0.0, 1.0, 1.0, 1.0])).unwrap();
        assert_eq!(t, TruthTable::majority(3).unwrap());
        assert_eq!(w, [0.0, 1.0, 1.0, 1.0]);
        let model = RandomModel::normal(42);
        let (a, wa) = random_ltf(8, &model).unwrap();
        let (b, wb) = random_ltf(8, &model).unwrap();
        assert_eq!(a, b);
        assert_eq!(wa, wb);
        assert!(is_ltf(&a).unwrap().is_member());
        let (c, _) = random_ltf(8, &model.with_stream(1)).unwrap();
        assert_ne!(a, c);
        let (u, wu) = random_ltf(8, &RandomModel::uniform(42)).unwrap();
        assert!(wu.iter().all(|w| (-1.0..=1.0).contains(w)));
        assert!(is_ltf(&u).unwrap().is_member());
    }

    #[test]
    fn ltf_doubling_matches_direct_sum() {
        let (t, w) = random_ltf(10, &RandomModel::uniform(3)).unwrap();
        for j in 0..t.len() {
            let p: f64 = w[0]
                + (0..10)
                    .map(|i| if j >> i & 1 == 1 { -w[i + 1] } else { w[i + 1] })
                    .sum::<f64>();
            assert_eq!(t.value(j), if p > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn ptf_models() {
        // Degree 1 goes through the LTF path.
        let model = RandomModel::uniform(9);
        assert_eq!(random_ptf(7, 1, &model).unwrap(), random_ltf(7, &model).unwrap().0);
        for sign in [1.0, -1.0] {
            let mut w = vec![0.0; 16];
            w[15] = sign;
            let t = random_ptf(4, 4, &RandomModel::fixed(w)).unwrap();
            let parity = TruthTable::parity(4).unwrap();
            assert_eq!(t, if sign > 0.0 { parity } else { parity.negated() });
        }
        let t = random_ptf(6, 2, &RandomModel::normal(5)).unwrap();
        assert!(is_ptf(&t, 2).unwrap().is_member());
        assert!(random_ptf(15, 2, &model).is_err());
        assert!(random_ptf(8, 5, &model).is_err());
    }

    #[test]
    fn monotone_counts_match_brute_force() {
        for n in 1..=4usize {
            let words = monotone_words(n, Budget::Standard).unwrap();
            let brute: Vec<u64> = (0u64..1 << (1 << n))
                .filter(|&w| is_monotone(&TruthTable::from_word(n, w).unwrap()))
                .collect();
            assert_eq!(words, brute, "n={n}");
        }
        assert_eq!(monotone_words(1, Budget::Standard).unwrap().len(), 3);
        assert_eq!(monotone_words(2, Budget::Standard).unwrap().len(), 6);
        assert_eq!(monotone_words(4, Budget::Standard).unwrap().len(), 168);
        assert!(matches!(monotone_words(6, Budget::Standard), Err(Error::Guard { .. })));
        assert!(monotone_words(7, Budget::Long).is_err());
    }

    #[test]
    fn random_function_is_seeded() {
        let a = random_function(9, 11).unwrap();
        assert_eq!(a, random_function(9, 11).unwrap());
        assert_eq!(a.len(), 512);
        assert_ne!(a, random_function(9, 12).unwrap());
        let small = random_function(3, 1).unwrap();
        assert_eq!(small.to_hex().len(), 2);
        assert!(random_function_stream(4, 1, 2).unwrap().as_word().unwrap() < 1 << 16);
    }
}
