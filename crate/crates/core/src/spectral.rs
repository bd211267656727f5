//! Walsh–Hadamard spectrum, Fourier entropy and autocorrelation.

use num_traits::Float;
use serde::{Serialize, Serializer};

use crate::dyadic::Dyadic;
use crate::truth_table::{SubsetMask, TruthTable};

/// Unnormalized spectrum `W(S) = Σ_x f(x) Π_{i∈S} x_i = 2^n f̂(S)`, indexed
/// by subset mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    n: usize,
    coeffs: Vec<i64>,
}

/// `C(u) = Σ_x f(x) f(x ⊙ u)`, indexed by the mask of negated coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutocorrelationTable {
    n: usize,
    values: Vec<i64>,
}

/// In-place unnormalized Walsh–Hadamard butterfly. `data.len()` must be a
/// power of two. Applying it twice multiplies the input by `data.len()`.
pub fn butterfly(data: &mut [i64]) {
    let len = data.len();
    assert!(len.is_power_of_two(), "butterfly length {len} is not a power of two");
    let mut h = 1;
    while h < len {
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

/// Spectrum of `tt` in `O(n 2^n)`.
pub fn wht(tt: &TruthTable) -> Spectrum {
    let mut coeffs = tt.signs();
    butterfly(&mut coeffs);
    Spectrum { n: tt.n(), coeffs }
}

/// Autocorrelation through the spectrum: `2^n C(u) = Σ_S W(S)^2 (-1)^{|u ∩ S|}`.
pub fn autocorrelation(tt: &TruthTable) -> AutocorrelationTable {
    autocorrelation_from_spectrum(&wht(tt))
}

pub fn autocorrelation_from_spectrum(spec: &Spectrum) -> AutocorrelationTable {
    let mut values: Vec<i64> = spec.coeffs.iter().map(|w| w * w).collect();
    butterfly(&mut values);
    let n = spec.n;
    for v in values.iter_mut() {
        debug_assert_eq!(*v & ((1 << n) - 1), 0);
        *v >>= n;
    }
    AutocorrelationTable { n, values }
}

impl Spectrum {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// `W(S)`.
    pub fn get(&self, s: SubsetMask) -> i64 {
        self.coeffs[s.0 as usize]
    }

    /// `f̂(S) = W(S) / 2^n`, exact.
    pub fn fourier_coefficient(&self, s: SubsetMask) -> Dyadic {
        Dyadic::new(self.get(s) as i128, self.n as u32)
    }

    /// `Σ_S W(S)^2`; equals `4^n` for every Boolean function.
    pub fn parseval_sum(&self) -> i128 {
        self.coeffs.iter().map(|&w| (w as i128) * (w as i128)).sum()
    }

    /// Chow parameters `(W(∅), W({1}), ..., W({n}))`.
    pub fn chow(&self) -> Vec<i64> {
        std::iter::once(self.coeffs[0])
            .chain((0..self.n).map(|b| self.coeffs[1 << b]))
            .collect()
    }

    /// Fourier entropy in bits, `-Σ f̂²(S) log2 f̂²(S)` with `0 log 0 = 0`.
    pub fn fourier_entropy(&self) -> f64 {
        self.fourier_entropy_as::<f64>()
    }

    pub fn fourier_entropy_as<T: Float>(&self) -> T {
        let two_n = T::from(2 * self.n).unwrap();
        let norm = T::from(4.0).unwrap().powi(self.n as i32);
        self.coeffs
            .iter()
            .filter(|&&w| w != 0)
            .map(|&w| {
                let w = T::from(w.unsigned_abs()).unwrap();
                let p = w * w / norm;
                // log2 p = 2 log2 |W| - 2n, exact when |W| is a power of two.
                -p * (T::from(2.0).unwrap() * w.log2() - two_n)
            })
            .fold(T::zero(), |a, b| a + b)
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl AutocorrelationTable {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `C(u)` for the shift that negates the coordinates in `u`.
    pub fn get(&self, u: SubsetMask) -> i64 {
        self.values[u.0 as usize]
    }
}
