//! Small dense complex linear systems: LU with partial (row) pivoting.

use std::ops::{Index, IndexMut};

use num_complex::Complex64;
use thiserror::Error;

/// A pivot smaller than this fraction of `‖A‖∞` is treated as zero.
pub const SINGULAR_PIVOT_RATIO: f64 = 1e-14;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinSolveError {
    #[error(
        "matrix is singular to working precision at elimination step {step} (|pivot| = {pivot:e})"
    )]
    Singular { step: usize, pivot: f64 },
    #[error("dimension mismatch: matrix is {n}x{n}, vector has length {len}")]
    Dimension { n: usize, len: usize },
    #[error("matrix must have dimension at least 1")]
    Empty,
    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
}

/// Square complex matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds from nested rows. Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            data.extend_from_slice(row);
        }
        DenseMatrix { n, data }
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Self {
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Max absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.row(i).iter().map(|z| z.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

impl Index<(usize, usize)> for DenseMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

pub fn norm_inf(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Solves `A x = b`.
pub fn lu_solve(a: &DenseMatrix, b: &[Complex64]) -> Result<Vec<Complex64>, LinSolveError> {
    let n = a.dim();
    if n == 0 {
        return Err(LinSolveError::Empty);
    }
    if b.len() != n {
        return Err(LinSolveError::Dimension { n, len: b.len() });
    }
    for i in 0..n {
        for j in 0..n {
            let z = a[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(LinSolveError::NonFinite { row: i, col: j });
            }
        }
    }

    let threshold = SINGULAR_PIVOT_RATIO * a.norm_inf();
    let mut lu = a.clone();
    let mut x = b.to_vec();

    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, lu[(i, k)].norm()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        if pivot < threshold || pivot == 0.0 {
            return Err(LinSolveError::Singular { step: k, pivot });
        }
        lu.swap_rows(k, p);
        x.swap(k, p);

        let inv = lu[(k, k)].inv();
        for i in k + 1..n {
            let factor = lu[(i, k)] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            lu[(i, k)] = factor;
            for j in k + 1..n {
                let ukj = lu[(k, j)];
                lu[(i, j)] -= factor * ukj;
            }
            let xk = x[k];
            x[i] -= factor * xk;
        }
    }

    for k in (0..n).rev() {
        let mut acc = x[k];
        for j in k + 1..n {
            acc -= lu[(k, j)] * x[j];
        }
        x[k] = acc / lu[(k, k)];
    }
    Ok(x)
}

/// `‖A x − b‖∞`.
pub fn residual_norm(a: &DenseMatrix, x: &[Complex64], b: &[Complex64]) -> f64 {
    let ax = a.mul_vec(x);
    ax.iter()
        .zip(b)
        .map(|(l, r)| (l - r).norm())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_is_a_no_op() {
        let b = vec![c(1.0, 0.0), c(0.0, 2.0), c(-1.0, 0.0)];
        let x = lu_solve(&DenseMatrix::identity(3), &b).unwrap();
        assert_eq!(x, b);
        assert_eq!(residual_norm(&DenseMatrix::identity(3), &b, &b), 0.0);
    }

    #[test]
    fn diagonal_system() {
        let a = DenseMatrix::from_rows(&[
            vec![c(2.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 4.0)],
        ]);
        let x = lu_solve(&a, &[c(2.0, 0.0), c(0.0, 4.0)]).unwrap();
        assert!((x[0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((x[1] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn needs_pivoting() {
        let a = DenseMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let x = lu_solve(&a, &[c(3.0, 0.0), c(5.0, 0.0)]).unwrap();
        assert_eq!(x, vec![c(5.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn singular_reports_step() {
        let a = DenseMatrix::from_real_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![0.0, 0.0, 1.0],
        ]);
        let err = lu_solve(&a, &[c(1.0, 0.0); 3]).unwrap_err();
        assert!(
            matches!(err, LinSolveError::Singular { step: 1, .. }),
            "{err:?}"
        );
    }

    #[test]
    fn shape_errors() {
        assert_eq!(
            lu_solve(&DenseMatrix::identity(2), &[c(1.0, 0.0)]),
            Err(LinSolveError::Dimension { n: 2, len: 1 })
        );
        assert_eq!(
            lu_solve(&DenseMatrix::zeros(0), &[]),
            Err(LinSolveError::Empty)
        );
    }

    #[test]
    fn perturbed_solution_shows_in_residual() {
        let a = DenseMatrix::from_real_rows(&[
            vec![4.0, 1.0, 0.0],
            vec![1.0, 3.0, 1.0],
            vec![0.0, 1.0, 2.0],
        ]);
        let b = vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)];
        let mut x = lu_solve(&a, &b).unwrap();
        x[1] += 1e-3;
        // column 1 has entries (1, 3, 1): the residual picks up at least 1e-3 * 1.
        assert!(residual_norm(&a, &x, &b) >= 1e-3 * 1.0 - 1e-15);
    }

    fn diag_dominant(n: usize, seed: u64) -> DenseMatrix {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut a = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                a[(i, j)] = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            a[(i, i)] += c(n as f64, 0.0);
        }
        a
    }

    proptest! {
        #[test]
        fn residual_within_contract(n in 1usize..=32, seed in any::<u64>()) {
            let a = diag_dominant(n, seed);
            let b: Vec<Complex64> = (0..n).map(|i| c(i as f64 - 3.0, 0.5 * i as f64)).collect();
            let x = lu_solve(&a, &b).unwrap();
            prop_assert!(residual_norm(&a, &x, &b) <= 1e-10 * norm_inf(&b).max(1e-300));
        }

        #[test]
        fn recovers_known_solution(n in 1usize..=32, seed in any::<u64>()) {
            let a = diag_dominant(n, seed);
            let known: Vec<Complex64> = (0..n).map(|i| c(1.0 + i as f64, -(i as f64) / 7.0)).collect();
            let b = a.mul_vec(&known);
            let x = lu_solve(&a, &b).unwrap();
            let err = x.iter().zip(&known).map(|(p, q)| (p - q).norm()).fold(0.0, f64::max);
            prop_assert!(err <= 1e-9 * norm_inf(&known));
        }
    }
}
