//! Small dense symmetric linear algebra for the reference computations.

use crate::error::{Error, Result};
use crate::sparse::SparseSymMatrix;

/// Largest dimension accepted by the dense oracles.
pub const DENSE_LIMIT: usize = 512;

const JACOBI_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        DenseMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_sparse(s: &SparseSymMatrix) -> Self {
        let mut m = Self::zeros(s.n());
        for (i, j, v) in s.iter() {
            m.set(i, j, v);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn matmul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if other.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                let row = &other.data[k * n..(k + 1) * n];
                for (o, b) in out.data[i * n..(i + 1) * n].iter_mut().zip(row) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn transpose(&self) -> DenseMatrix {
        Self::from_fn(self.n, |i, j| self.get(j, i))
    }

    /// `diag(left)·A·diag(right)`.
    pub fn scale(&self, left: &[f64], right: &[f64]) -> DenseMatrix {
        Self::from_fn(self.n, |i, j| left[i] * self.get(i, j) * right[j])
    }

    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    fn off_diagonal_norm(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j {
                    s += self.get(i, j).powi(2);
                }
            }
        }
        s.sqrt()
    }
}

/// Eigen-decomposition `A = V·diag(values)·Vᵀ`; column `k` of `vectors`
/// belongs to `values[k]`.
#[derive(Debug, Clone)]
pub struct SymEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

impl SymEigen {
    /// `V·diag(f(λ))·Vᵀ`.
    pub fn function(&self, f: impl Fn(f64) -> f64) -> DenseMatrix {
        let fl: Vec<f64> = self.values.iter().map(|&l| f(l)).collect();
        self.with_weights(&fl)
    }

    /// `V·diag(weights)·Vᵀ`.
    pub fn with_weights(&self, fl: &[f64]) -> DenseMatrix {
        let n = self.values.len();
        let v = &self.vectors;
        let mut out = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let s: f64 = (0..n).map(|k| v.get(i, k) * fl[k] * v.get(j, k)).sum();
                out.set(i, j, s);
                out.set(j, i, s);
            }
        }
        out
    }

    /// `Vᵀ·x`.
    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let n = self.values.len();
        let mut w = vec![0.0; n];
        for (i, xi) in x.iter().enumerate() {
            for (wk, vik) in w.iter_mut().zip(self.vectors.row(i)) {
                *wk += vik * xi;
            }
        }
        w
    }
}

/// Cyclic Jacobi rotations until the off-diagonal norm is at most
/// `1e-12·‖A‖_F`. The input must be symmetric.
pub fn jacobi_eigen(a: &DenseMatrix) -> Result<SymEigen> {
    let n = a.n;
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: DENSE_LIMIT,
        });
    }
    let mut m = a.clone();
    let mut v = DenseMatrix::identity(n);
    let tol = JACOBI_TOL * a.frobenius();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if m.off_diagonal_norm() <= tol {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (mkp, mkq) = (m.get(k, p), m.get(k, q));
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let (mpk, mqk) = (m.get(p, k), m.get(q, k));
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for k in 0..n {
                    let (vkp, vkq) = (v.get(k, p), v.get(k, q));
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged && m.off_diagonal_norm() > tol {
        return Err(Error::NoRoot(format!(
            "Jacobi iteration did not converge in {JACOBI_MAX_SWEEPS} sweeps"
        )));
    }
    Ok(SymEigen {
        values: (0..n).map(|i| m.get(i, i)).collect(),
        vectors: v,
    })
}
