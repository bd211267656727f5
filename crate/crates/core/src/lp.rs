//! Phase-one simplex for feasibility problems `A x = b, x >= 0`, generic over
//! the scalar field.
//!
//! With an exact field ([`crate::Rational`]) the outcome is a theorem: either a
//! feasible point or a Farkas vector `y` with `Aᵀy <= 0` and `bᵀy > 0`. With
//! floats the final basis is meant to be handed to [`crossover`], which
//! rebuilds both candidate certificates exactly.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Result of a feasibility solve.
#[derive(Clone, Debug, PartialEq)]
pub enum Feasibility<T> {
    /// `A x = b`, `x >= 0`.
    Feasible { x: Vec<T> },
    /// `Aᵀ y <= 0` and `bᵀ y > 0`.
    Infeasible { farkas: Vec<T> },
}

/// Dense phase-one tableau. Columns `0..cols` are the structural variables,
/// `cols..cols+rows` the artificials; the last column is the right-hand side.
#[derive(Clone, Debug)]
pub struct Simplex<T> {
    rows: usize,
    cols: usize,
    tab: Vec<Vec<T>>,
    reduced: Vec<T>,
    basis: Vec<usize>,
    negated: Vec<bool>,
    max_pivots: usize,
}

impl<T: Scalar> Simplex<T> {
    /// `a` is row-major with `b.len()` rows of equal length.
    pub fn new(a: &[Vec<T>], b: &[T]) -> Self {
        let rows = b.len();
        assert_eq!(a.len(), rows, "row count mismatch");
        let cols = a.first().map_or(0, Vec::len);
        let width = cols + rows + 1;
        let mut tab = Vec::with_capacity(rows);
        let mut negated = Vec::with_capacity(rows);
        for (i, (row, bi)) in a.iter().zip(b).enumerate() {
            assert_eq!(row.len(), cols, "ragged constraint matrix");
            let flip = bi.is_negative();
            let mut r: Vec<T> = Vec::with_capacity(width);
            r.extend(row.iter().map(|v| if flip { -v.clone() } else { v.clone() }));
            r.extend((0..rows).map(|k| if k == i { T::one() } else { T::zero() }));
            r.push(if flip { -bi.clone() } else { bi.clone() });
            tab.push(r);
            negated.push(flip);
        }
        let mut reduced = vec![T::zero(); width];
        for j in (0..cols).chain(std::iter::once(width - 1)) {
            reduced[j] = tab.iter().fold(T::zero(), |acc, r| acc - r[j].clone());
        }
        Simplex {
            rows,
            cols,
            tab,
            reduced,
            basis: (cols..cols + rows).collect(),
            negated,
            max_pivots: if T::EXACT { usize::MAX } else { 200_000 },
        }
    }

    /// Basic column per row, indices into the extended column set.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Run phase one with Bland's rule. Returns `None` only when a floating
    /// instance hits the pivot cap.
    pub fn solve(&mut self) -> Option<Feasibility<T>> {
        let width = self.cols + self.rows + 1;
        let mut pivots = 0usize;
        loop {
            let entering = (0..width - 1).find(|&j| self.reduced[j].is_neg());
            let Some(col) = entering else { break };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows {
                let a = &self.tab[i][col];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.tab[i][width - 1].clone() / a.clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            // Phase one is bounded below, so an unbounded column means rounding noise.
            let (row, _) = best?;
            self.pivot(row, col);
            pivots += 1;
            if pivots > self.max_pivots {
                return None;
            }
        }
        Some(self.outcome())
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.tab[row].len();
        let p = self.tab[row][col].clone();
        for v in self.tab[row].iter_mut() {
            if !v.is_zero() {
                *v = v.clone() / p.clone();
            }
        }
        let prow = self.tab[row].clone();
        let nz: Vec<usize> = (0..width).filter(|&j| !prow[j].is_zero()).collect();
        let eliminate = |target: &mut Vec<T>| {
            let factor = target[col].clone();
            if factor.is_zero() {
                return;
            }
            for &j in &nz {
                target[j] = target[j].clone() - factor.clone() * prow[j].clone();
            }
        };
        for (i, r) in self.tab.iter_mut().enumerate() {
            if i != row {
                eliminate(r);
            }
        }
        eliminate(&mut self.reduced);
        self.basis[row] = col;
    }

    fn outcome(&self) -> Feasibility<T> {
        let width = self.cols + self.rows + 1;
        let infeasibility = -self.reduced[width - 1].clone();
        if infeasibility.is_pos() {
            let farkas = (0..self.rows)
                .map(|i| {
                    let dual = T::one() - self.reduced[self.cols + i].clone();
                    if self.negated[i] {
                        -dual
                    } else {
                        dual
                    }
                })
                .collect();
            Feasibility::Infeasible { farkas }
        } else {
            let mut x = vec![T::zero(); self.cols];
            for (i, &bvar) in self.basis.iter().enumerate() {
                if bvar < self.cols {
                    x[bvar] = self.tab[i][width - 1].clone();
                }
            }
            Feasibility::Feasible { x }
        }
    }
}

/// Solve the square system `m z = rhs` by Gaussian elimination. Returns
/// `None` when `m` is singular (exactly, or to tolerance for floats).
pub fn solve_square<T: Scalar>(mut m: Vec<Vec<T>>, mut rhs: Vec<T>) -> Option<Vec<T>> {
    let size = rhs.len();
    for c in 0..size {
        let pivot_row = if T::EXACT {
            (c..size).find(|&r| !m[r][c].is_zero())?
        } else {
            let r = (c..size).max_by(|&a, &b| {
                m[a][c].abs().partial_cmp(&m[b][c].abs()).expect("finite")
            })?;
            if m[r][c].is_negligible() {
                return None;
            }
            r
        };
        m.swap(c, pivot_row);
        rhs.swap(c, pivot_row);
        for r in c + 1..size {
            if m[r][c].is_zero() {
                continue;
            }
            let factor = m[r][c].clone() / m[c][c].clone();
            let (upper, lower) = m.split_at_mut(r);
            for (t, p) in lower[0][c..].iter_mut().zip(&upper[c][c..]) {
                *t = t.clone() - factor.clone() * p.clone();
            }
            rhs[r] = rhs[r].clone() - factor * rhs[c].clone();
        }
    }
    let mut z = vec![T::zero(); size];
    for r in (0..size).rev() {
        let mut acc = rhs[r].clone();
        for k in r + 1..size {
            acc = acc - m[r][k].clone() * z[k].clone();
        }
        z[r] = acc / m[r][r].clone();
    }
    Some(z)
}

/// Rebuild an exact outcome from a basis found by an inexact solve.
///
/// `a` and `b` are the original (unnegated) data. Returns `None` when the
/// basis is singular or neither its primal nor its dual solution is a valid
/// certificate.
pub fn crossover(a: &[Vec<BigRational>], b: &[BigRational], basis: &[usize]) -> Option<Feasibility<BigRational>> {
    let rows = b.len();
    let cols = a.first().map_or(0, Vec::len);
    let sign: Vec<BigRational> = b
        .iter()
        .map(|v| if v < &BigRational::zero() { -BigRational::one() } else { BigRational::one() })
        .collect();
    // Column `j` of the extended, row-normalized matrix.
    let column = |j: usize| -> Vec<BigRational> {
        (0..rows)
            .map(|i| {
                if j < cols {
                    &sign[i] * &a[i][j]
                } else if j - cols == i {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            })
            .collect()
    };
    let bcols: Vec<Vec<BigRational>> = basis.iter().map(|&j| column(j)).collect();
    let bprime: Vec<BigRational> = (0..rows).map(|i| &sign[i] * &b[i]).collect();

    // Primal: B x_B = b'.
    let mat: Vec<Vec<BigRational>> = (0..rows).map(|i| bcols.iter().map(|c| c[i].clone()).collect()).collect();
    let xb = solve_square(mat, bprime.clone())?;
    let primal_ok = xb.iter().zip(basis).all(|(v, &j)| {
        if j < cols {
            !v.is_negative()
        } else {
            v.is_zero()
        }
    });
    if primal_ok {
        let mut x = vec![BigRational::zero(); cols];
        for (v, &j) in xb.into_iter().zip(basis) {
            if j < cols {
                x[j] = v;
            }
        }
        return Some(Feasibility::Feasible { x });
    }

    // Dual: Bᵀ π = c_B, artificial cost 1.
    let tmat: Vec<Vec<BigRational>> = bcols.clone();
    let cb: Vec<BigRational> = basis
        .iter()
        .map(|&j| if j < cols { BigRational::zero() } else { BigRational::one() })
        .collect();
    let pi = solve_square(tmat, cb)?;
    let dot = |c: &[BigRational]| c.iter().zip(&pi).fold(BigRational::zero(), |acc, (u, v)| acc + u * v);
    let objective = dot(&bprime);
    let dual_ok = objective > BigRational::zero()
        && (0..cols).all(|j| dot(&column(j)) <= BigRational::zero())
        && pi.iter().all(|p| p <= &BigRational::one());
    if dual_ok {
        let farkas = pi.into_iter().zip(&sign).map(|(p, s)| p * s).collect();
        return Some(Feasibility::Infeasible { farkas });
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;
    use crate::Rational;

    fn r(v: i64) -> Rational {
        ratio(v, 1)
    }

    fn exact(a: &[Vec<i64>], b: &[i64]) -> (Vec<Vec<Rational>>, Vec<Rational>) {
        (
            a.iter().map(|row| row.iter().map(|&v| r(v)).collect()).collect(),
            b.iter().map(|&v| r(v)).collect(),
        )
    }

    fn check_feasible(a: &[Vec<Rational>], b: &[Rational], x: &[Rational]) {
        assert!(x.iter().all(|v| v >= &Rational::zero()));
        for (row, bi) in a.iter().zip(b) {
            let lhs = row.iter().zip(x).fold(Rational::zero(), |acc, (u, v)| acc + u * v);
            assert_eq!(&lhs, bi);
        }
    }

    fn check_farkas(a: &[Vec<Rational>], b: &[Rational], y: &[Rational]) {
        let cols = a[0].len();
        for j in 0..cols {
            let v = a.iter().zip(y).fold(Rational::zero(), |acc, (row, yi)| acc + &row[j] * yi);
            assert!(v <= Rational::zero(), "column {j}: {v}");
        }
        let by = b.iter().zip(y).fold(Rational::zero(), |acc, (u, v)| acc + u * v);
        assert!(by > Rational::zero());
    }

    #[test]
    fn feasible_system() {
        // x1 + x2 = 3, x1 - x2 = -1  ->  x = (1, 2)
        let (a, b) = exact(&[vec![1, 1], vec![1, -1]], &[3, -1]);
        match Simplex::new(&a, &b).solve().unwrap() {
            Feasibility::Feasible { x } => {
                check_feasible(&a, &b, &x);
                assert_eq!(x, vec![r(1), r(2)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_system() {
        // x1 + x2 = 1, x1 + x2 = 2
        let (a, b) = exact(&[vec![1, 1], vec![1, 1]], &[1, 2]);
        match Simplex::new(&a, &b).solve().unwrap() {
            Feasibility::Infeasible { farkas } => check_farkas(&a, &b, &farkas),
            other => panic!("{other:?}"),
        }
        // x >= 0 with x1 + x2 = -1
        let (a, b) = exact(&[vec![1, 1]], &[-1]);
        match Simplex::new(&a, &b).solve().unwrap() {
            Feasibility::Infeasible { farkas } => check_farkas(&a, &b, &farkas),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn float_then_crossover() {
        let (a, b) = exact(&[vec![2, 1, 0], vec![0, 1, 3]], &[4, 6]);
        let af: Vec<Vec<f64>> = vec![vec![2.0, 1.0, 0.0], vec![0.0, 1.0, 3.0]];
        let mut s = Simplex::new(&af, &[4.0, 6.0]);
        assert!(matches!(s.solve(), Some(Feasibility::Feasible { .. })));
        match crossover(&a, &b, s.basis()).unwrap() {
            Feasibility::Feasible { x } => check_feasible(&a, &b, &x),
            other => panic!("{other:?}"),
        }

        let (a, b) = exact(&[vec![1, -1], vec![-1, 1]], &[1, 1]);
        let af = vec![vec![1.0, -1.0], vec![-1.0, 1.0]];
        let mut s = Simplex::new(&af, &[1.0, 1.0]);
        assert!(matches!(s.solve(), Some(Feasibility::Infeasible { .. })));
        match crossover(&a, &b, s.basis()).unwrap() {
            Feasibility::Infeasible { farkas } => check_farkas(&a, &b, &farkas),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn square_solver() {
        let m = vec![vec![r(0), r(2)], vec![r(3), r(1)]];
        assert_eq!(solve_square(m, vec![r(4), r(5)]).unwrap(), vec![r(1), r(2)]);
        let singular = vec![vec![r(1), r(2)], vec![r(2), r(4)]];
        assert!(solve_square(singular, vec![r(1), r(1)]).is_none());
        let mf = vec![vec![0.0, 2.0], vec![3.0, 1.0]];
        let z = solve_square(mf, vec![4.0, 5.0]).unwrap();
        assert!((z[0] - 1.0).abs() < 1e-12 && (z[1] - 2.0).abs() < 1e-12);
    }
}
