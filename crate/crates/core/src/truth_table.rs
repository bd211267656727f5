//! Bit-packed truth tables over `{-1,1}^n`.
//!
//! Input index `j` encodes the assignment `a_i = (j >> (i-1)) & 1` and the
//! point `x_i = (-1)^{a_i}`. Bit `b_j` of the table encodes the output
//! `f = (-1)^{b_j}`, so a clear bit is `+1` and a set bit is `-1`.
//! Negating coordinate `i` of a point is XOR with bit `i-1` of its index.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::MAX_VARS;

/// Subset `S` of `[n]`; bit `i-1` set means `i ∈ S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct SubsetMask(pub u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub fn new(mask: u32, n: usize) -> Result<Self> {
        if n < 32 && (mask as u64) >> n != 0 {
            return Err(Error::IndexOutOfRange {
                index: mask as usize,
                n,
            });
        }
        Ok(SubsetMask(mask))
    }

    /// Subset from 1-based variable indices.
    pub fn from_vars(vars: &[usize]) -> Self {
        SubsetMask(vars.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    pub fn singleton(i: usize) -> Self {
        SubsetMask(1 << (i - 1))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        (self.0 >> (i - 1)) & 1 == 1
    }

    /// 1-based members in increasing order.
    pub fn vars(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |b| (self.0 >> b) & 1 == 1).map(|b| b + 1)
    }
}

/// Boolean function on `n` variables, `1 <= n <= 20`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::VarCount(n));
    }
    Ok(())
}

fn word_count(n: usize) -> usize {
    if n <= 6 {
        1
    } else {
        1 << (n - 6)
    }
}

/// Mask of the live bits in the (single) word of an `n <= 6` table.
fn low_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// For `i < 6`: mask of word bits whose index has bit `i` clear.
pub(crate) const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

impl TruthTable {
    /// Table whose bit at index `j` is `bit(j)`.
    pub fn from_bits_fn(n: usize, mut bit: impl FnMut(usize) -> bool) -> Result<Self> {
        check_n(n)?;
        let mut words = vec![0u64; word_count(n)];
        for j in 0..1usize << n {
            if bit(j) {
                words[j >> 6] |= 1 << (j & 63);
            }
        }
        Ok(TruthTable { n, words })
    }

    /// Table with `f(j) = value(j)`; any non-positive value maps to `-1`.
    pub fn from_values_fn(n: usize, mut value: impl FnMut(usize) -> i64) -> Result<Self> {
        Self::from_bits_fn(n, |j| value(j) <= 0)
    }

    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self> {
        check_n(n)?;
        if words.len() != word_count(n) {
            return Err(Error::Parameter {
                name: "words",
                value: words.len().to_string(),
                reason: format!("n={n} needs {} words", word_count(n)),
            });
        }
        if n < 6 && words[0] & !low_mask(n) != 0 {
            return Err(Error::HexPadding(n));
        }
        Ok(TruthTable { n, words })
    }

    /// Single-word table for `n <= 6`; bits above `2^n` are masked off.
    pub fn from_word(n: usize, word: u64) -> Result<Self> {
        check_n(n)?;
        if n > 6 {
            return Err(Error::VarCount(n));
        }
        Ok(TruthTable {
            n,
            words: vec![word & low_mask(n)],
        })
    }

    pub fn constant(n: usize, value: i8) -> Result<Self> {
        Self::from_bits_fn(n, |_| value < 0)
    }

    /// `f(x) = x_i`.
    pub fn dictator(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::VariableOutOfRange { index: i, n });
        }
        Self::from_bits_fn(n, |j| (j >> (i - 1)) & 1 == 1)
    }

    /// `f(x) = x_1 x_2 ... x_n`.
    pub fn parity(n: usize) -> Result<Self> {
        Self::from_bits_fn(n, |j| j.count_ones() % 2 == 1)
    }

    /// `f(x) = sign(x_1 + ... + x_n)` with `sign(0) = -1`.
    pub fn majority(n: usize) -> Result<Self> {
        Self::from_bits_fn(n, |j| 2 * (j.count_ones() as usize) >= n)
    }

    /// `b = a_1 ∧ ... ∧ a_n`: output `-1` only at the all-`-1` point.
    pub fn and_type(n: usize) -> Result<Self> {
        Self::from_bits_fn(n, |j| j == (1 << n) - 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of inputs, `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The table as one word, for `n <= 6`.
    pub fn as_word(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    /// Raw bit `b_j`. Panics if `j >= 2^n`.
    #[inline]
    pub fn bit(&self, j: usize) -> bool {
        assert!(j < self.len(), "index {j} out of range for n={}", self.n);
        (self.words[j >> 6] >> (j & 63)) & 1 == 1
    }

    /// `f(j) ∈ {-1, 1}`. Panics if `j >= 2^n`.
    #[inline]
    pub fn value(&self, j: usize) -> i8 {
        if self.bit(j) {
            -1
        } else {
            1
        }
    }

    pub fn evaluate(&self, j: usize) -> Result<i8> {
        if j >= self.len() {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        Ok(self.value(j))
    }

    /// Evaluate at `x ∈ {-1,1}^n`, given as `x_1..x_n`.
    pub fn evaluate_point(&self, x: &[i8]) -> Result<i8> {
        Ok(self.value(self.index_of(x)?))
    }

    /// Input index of a `±1` point.
    pub fn index_of(&self, x: &[i8]) -> Result<usize> {
        if x.len() != self.n {
            return Err(Error::PointLength {
                expected: self.n,
                found: x.len(),
            });
        }
        x.iter().enumerate().try_fold(0usize, |j, (i, &xi)| match xi {
            1 => Ok(j),
            -1 => Ok(j | 1 << i),
            other => Err(Error::NotSign(other as i64)),
        })
    }

    /// `±1` point for an input index.
    pub fn point_of(&self, j: usize) -> Result<Vec<i8>> {
        if j >= self.len() {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        Ok((0..self.n)
            .map(|i| if (j >> i) & 1 == 1 { -1 } else { 1 })
            .collect())
    }

    /// Index of `x^{⊕S}` where `x` has index `j`.
    pub fn flip_point(&self, j: usize, s: SubsetMask) -> Result<usize> {
        if j >= self.len() {
            return Err(Error::IndexOutOfRange { index: j, n: self.n });
        }
        let s = SubsetMask::new(s.0, self.n)?;
        Ok(j ^ s.0 as usize)
    }

    /// Fix the listed variables (1-based index, value in `{-1,1}`); the free
    /// variables are renumbered in increasing original order.
    pub fn restrict(&self, fixed: &[(usize, i8)]) -> Result<TruthTable> {
        let mut fixed_mask = 0usize;
        let mut fixed_bits = 0usize;
        for &(i, v) in fixed {
            if i == 0 || i > self.n {
                return Err(Error::VariableOutOfRange { index: i, n: self.n });
            }
            let bit = 1usize << (i - 1);
            if fixed_mask & bit != 0 {
                return Err(Error::DuplicateVariable(i));
            }
            match v {
                1 => {}
                -1 => fixed_bits |= bit,
                other => return Err(Error::NotSign(other as i64)),
            }
            fixed_mask |= bit;
        }
        let k = fixed.len();
        if k == 0 || k >= self.n {
            return Err(Error::RestrictAll {
                fixed: k,
                n: self.n,
            });
        }
        Ok(self.restrict_masked(fixed_mask, fixed_bits))
    }

    /// Restriction given as (mask of fixed variables, their index bits).
    /// The caller guarantees `0 < popcount(mask) < n`.
    pub(crate) fn restrict_masked(&self, fixed_mask: usize, fixed_bits: usize) -> TruthTable {
        let free: Vec<usize> = (0..self.n).filter(|b| fixed_mask >> b & 1 == 0).collect();
        let m = free.len();
        let mut words = vec![0u64; word_count(m)];
        for r in 0..1usize << m {
            let mut j = fixed_bits;
            for (t, &b) in free.iter().enumerate() {
                j |= ((r >> t) & 1) << b;
            }
            if self.bit(j) {
                words[r >> 6] |= 1 << (r & 63);
            }
        }
        TruthTable { n: m, words }
    }

    /// Pointwise negation `-f`.
    pub fn negated(&self) -> TruthTable {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        if self.n < 6 {
            words[0] &= low_mask(self.n);
        }
        TruthTable { n: self.n, words }
    }

    /// Number of inputs where `f = -1`.
    pub fn count_minus(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_constant(&self) -> bool {
        let c = self.count_minus();
        c == 0 || c == self.len() as u64
    }

    /// `f` as a vector of `±1` integers indexed by input.
    pub fn signs(&self) -> Vec<i64> {
        (0..self.len()).map(|j| self.value(j) as i64).collect()
    }

    /// Number of `x` with `f(x) != f(x^{⊕i})`, counted word-parallel.
    pub(crate) fn flip_disagreements(&self, i: usize) -> u64 {
        let b = i - 1;
        if b < 6 {
            let shift = 1u32 << b;
            // Count each disagreeing pair once from its low member.
            let pairs: u64 = self
                .words
                .iter()
                .map(|&w| ((w ^ (w >> shift)) & LOW_HALF[b]).count_ones() as u64)
                .sum();
            2 * pairs
        } else {
            let stride = 1usize << (b - 6);
            let mut pairs = 0u64;
            for (k, &w) in self.words.iter().enumerate() {
                if k & stride == 0 {
                    pairs += (w ^ self.words[k | stride]).count_ones() as u64;
                }
            }
            2 * pairs
        }
    }

    pub fn from_hex(hex: &str, n: usize) -> Result<Self> {
        check_n(n)?;
        let nbytes = std::cmp::max(1, (1usize << n) / 8);
        let expected = 2 * nbytes;
        let chars: Vec<char> = hex.chars().collect();
        if chars.len() != expected {
            return Err(Error::HexLength {
                n,
                expected,
                found: chars.len(),
            });
        }
        let mut words = vec![0u64; word_count(n)];
        for (k, pair) in chars.chunks(2).enumerate() {
            let mut byte = 0u64;
            for (t, &c) in pair.iter().enumerate() {
                let d = c.to_digit(16).ok_or(Error::HexDigit {
                    digit: c,
                    position: 2 * k + t,
                })?;
                byte = byte << 4 | d as u64;
            }
            words[k / 8] |= byte << (8 * (k % 8));
        }
        if n < 3 && words[0] & !low_mask(n) != 0 {
            return Err(Error::HexPadding(n));
        }
        Ok(TruthTable { n, words })
    }

    /// Canonical lowercase hex: bytes by increasing input index, LSB-first.
    pub fn to_hex(&self) -> String {
        let nbytes = std::cmp::max(1, self.len() / 8);
        let mut s = String::with_capacity(2 * nbytes);
        for k in 0..nbytes {
            let byte = (self.words[k / 8] >> (8 * (k % 8))) & 0xff;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, {})", self.n, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for TruthTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn and2() -> TruthTable {
        TruthTable::from_hex("08", 2).unwrap()
    }

    #[test]
    fn hex_examples() {
        let c = TruthTable::from_hex("00", 2).unwrap();
        assert!((0..4).all(|j| c.value(j) == 1));
        assert_eq!(
            TruthTable::from_hex("8", 3),
            Err(Error::HexLength {
                n: 3,
                expected: 2,
                found: 1
            })
        );
        let t = and2();
        assert_eq!((0..4).map(|j| t.bit(j)).collect::<Vec<_>>(), [false, false, false, true]);
        assert_eq!(t, TruthTable::and_type(2).unwrap());
    }

    #[test]
    fn hex_errors() {
        assert!(matches!(TruthTable::from_hex("0g", 2), Err(Error::HexDigit { digit: 'g', position: 1 })));
        assert_eq!(TruthTable::from_hex("10", 2), Err(Error::HexPadding(2)));
        assert_eq!(TruthTable::from_hex("04", 1), Err(Error::HexPadding(1)));
        assert_eq!(TruthTable::from_hex("00", 0), Err(Error::VarCount(0)));
        assert_eq!(TruthTable::from_hex("00", 21), Err(Error::VarCount(21)));
        assert_eq!(TruthTable::from_hex("80", 3).unwrap().to_hex(), "80");
        assert_eq!(TruthTable::from_hex("0A", 2).unwrap().to_hex(), "0a");
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(and2().evaluate_point(&[-1, -1]).unwrap(), -1);
        assert_eq!(and2().evaluate(3).unwrap(), -1);
        let c = TruthTable::constant(3, 1).unwrap();
        assert!((0..8).all(|j| c.evaluate(j).unwrap() == 1));
        // a = (1, 0) is index 1.
        assert_eq!(TruthTable::dictator(2, 1).unwrap().evaluate(1).unwrap(), -1);
        assert_eq!(
            and2().evaluate(4),
            Err(Error::IndexOutOfRange { index: 4, n: 2 })
        );
        assert_eq!(and2().evaluate_point(&[1, 2]), Err(Error::NotSign(2)));
    }

    #[test]
    fn restrict_examples() {
        let t = and2();
        assert_eq!(t.restrict(&[(2, -1)]).unwrap(), TruthTable::dictator(1, 1).unwrap());
        assert_eq!(t.restrict(&[(2, 1)]).unwrap(), TruthTable::constant(1, 1).unwrap());
        let p3 = TruthTable::parity(3).unwrap();
        assert_eq!(p3.restrict(&[(3, 1)]).unwrap(), TruthTable::parity(2).unwrap());
        assert_eq!(t.restrict(&[(1, 1), (2, 1)]), Err(Error::RestrictAll { fixed: 2, n: 2 }));
        assert_eq!(p3.restrict(&[(1, 1), (1, -1)]), Err(Error::DuplicateVariable(1)));
        assert_eq!(p3.restrict(&[]), Err(Error::RestrictAll { fixed: 0, n: 3 }));
    }

    #[test]
    fn flip_point_examples() {
        let t = TruthTable::parity(3).unwrap();
        assert_eq!(t.flip_point(0, SubsetMask::from_vars(&[1])).unwrap(), 1);
        assert_eq!(t.flip_point(5, SubsetMask::from_vars(&[1, 3])).unwrap(), 0);
        assert_eq!(t.flip_point(6, SubsetMask::EMPTY).unwrap(), 6);
        assert!(t.flip_point(8, SubsetMask::EMPTY).is_err());
        assert!(t.flip_point(0, SubsetMask(8)).is_err());
    }

    #[test]
    fn flip_disagreements_match_direct_count() {
        for n in 1..=9 {
            let t = TruthTable::from_bits_fn(n, |j| ((j * 2654435761usize) >> 7) & 1 == 1).unwrap();
            for i in 1..=n {
                let direct = (0..t.len()).filter(|&j| t.bit(j) != t.bit(j ^ 1 << (i - 1))).count();
                assert_eq!(t.flip_disagreements(i), direct as u64, "n={n} i={i}");
            }
        }
    }

    #[test]
    fn named_functions() {
        assert_eq!(TruthTable::majority(3).unwrap().to_hex(), "e8");
        assert_eq!(TruthTable::parity(2).unwrap().to_hex(), "06");
        assert_eq!(TruthTable::dictator(2, 1).unwrap().to_hex(), "0a");
        assert_eq!(TruthTable::parity(2).unwrap().negated().to_hex(), "09");
    }

    fn table_strategy(max_n: usize) -> impl Strategy<Value = TruthTable> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<u64>(), word_count(n))
                .prop_map(move |mut w| {
                    w[0] &= low_mask(n);
                    TruthTable::from_words(n, w).unwrap()
                })
        })
    }

    proptest! {
        #[test]
        fn hex_round_trip(t in table_strategy(10)) {
            let hex = t.to_hex();
            prop_assert_eq!(TruthTable::from_hex(&hex, t.n()).unwrap().to_hex(), hex);
        }

        #[test]
        fn flip_is_involution(t in table_strategy(8), j in any::<usize>(), s in any::<u32>()) {
            let j = j % t.len();
            let s = SubsetMask(s & ((1u32 << t.n()) - 1));
            let once = t.flip_point(j, s).unwrap();
            prop_assert_eq!(t.flip_point(once, s).unwrap(), j);
        }
    }

    #[test]
    fn restrict_then_evaluate_exhaustive() {
        for n in 2..=8 {
            let t = TruthTable::from_bits_fn(n, |j| (j.wrapping_mul(0x9e3779b9) >> 5) & 1 == 1).unwrap();
            // Every fixed mask with 1..n-1 variables, all fixed values, all points.
            for mask in 1usize..(1 << n) - 1 {
                let vars: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 1).collect();
                for vals in 0usize..1 << vars.len() {
                    let fixed: Vec<(usize, i8)> = vars
                        .iter()
                        .enumerate()
                        .map(|(t, &b)| (b + 1, if vals >> t & 1 == 1 { -1 } else { 1 }))
                        .collect();
                    let r = t.restrict(&fixed).unwrap();
                    let free: Vec<usize> = (0..n).filter(|b| mask >> b & 1 == 0).collect();
                    for p in 0..r.len() {
                        let mut x = vec![0i8; n];
                        for &(i, v) in &fixed {
                            x[i - 1] = v;
                        }
                        for (t, &b) in free.iter().enumerate() {
                            x[b] = if p >> t & 1 == 1 { -1 } else { 1 };
                        }
                        assert_eq!(r.value(p), t.evaluate_point(&x).unwrap());
                    }
                }
            }
        }
    }
}
