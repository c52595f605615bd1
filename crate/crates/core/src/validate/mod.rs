//! Reference computations and statistical checks.
//!
//! The dense oracles diagonalize `S` with Jacobi rotations and are limited to
//! [`DENSE_LIMIT`] unknowns; [`BandedCholesky`] gives exact samples for
//! moderately sized grids.

mod cholesky;
mod dense;
mod variogram;

pub use cholesky::{bandwidth, precision_band, BandedCholesky, BAND_STORAGE_LIMIT};
pub use dense::{jacobi_eigen, DenseMatrix, SymEigen, DENSE_LIMIT};
pub use variogram::{empirical_variogram, GridGeometry, VariogramEstimate, MAX_PAIRS};

use rayon::prelude::*;

use crate::chebyshev::ChebSeries;
use crate::error::{Error, Result};
use crate::order::{TestConfig, VarianceTestModel};
use crate::precision::PrecisionOperator;
use crate::simulate::standard_normal_vector;

/// Eigen-decomposition of `S` together with `D` and `P`.
#[derive(Debug, Clone)]
pub struct SpectralOracle {
    pub eigen: SymEigen,
    /// `1 / P(λ_i)`.
    inv_p: Vec<f64>,
    d_inv: Vec<f64>,
}

impl SpectralOracle {
    pub fn new(op: &PrecisionOperator) -> Result<Self> {
        if op.n() > DENSE_LIMIT {
            return Err(Error::TooLarge {
                n: op.n(),
                limit: DENSE_LIMIT,
            });
        }
        let eigen = jacobi_eigen(&DenseMatrix::from_sparse(op.s()))?;
        let mut inv_p = Vec::with_capacity(op.n());
        for &l in &eigen.values {
            let p = op.target().poly(l);
            if !(p > 0.0) {
                return Err(Error::ModelViolation(format!(
                    "P({l}) = {p} at an eigenvalue of S"
                )));
            }
            inv_p.push(1.0 / p);
        }
        let d_inv = op.d().entries().iter().map(|d| 1.0 / d).collect();
        Ok(SpectralOracle { eigen, inv_p, d_inv })
    }

    pub fn n(&self) -> usize {
        self.inv_p.len()
    }

    /// `P(S)^{-1/2}`.
    pub fn sqrt_inv(&self) -> DenseMatrix {
        let w: Vec<f64> = self.inv_p.iter().map(|v| v.sqrt()).collect();
        self.eigen.with_weights(&w)
    }

    /// `Q⁻¹ = D⁻¹·P(S)⁻¹·D⁻¹`.
    pub fn covariance(&self) -> DenseMatrix {
        self.eigen
            .with_weights(&self.inv_p)
            .scale(&self.d_inv, &self.d_inv)
    }

    /// `D⁻¹·p(S)` for the series `p`.
    pub fn series_factor(&self, series: &ChebSeries) -> DenseMatrix {
        let ones = vec![1.0; self.n()];
        self.eigen.function(|l| series.eval(l)).scale(&self.d_inv, &ones)
    }

    /// `Σ_s = D⁻¹·p(S)²·D⁻¹`.
    pub fn simulated_covariance(&self, series: &ChebSeries) -> DenseMatrix {
        self.eigen
            .function(|l| series.eval(l).powi(2))
            .scale(&self.d_inv, &self.d_inv)
    }

    /// `max_i |(1/P(λ_i) − p(λ_i)²) / p(λ_i)²|` over the eigenvalues of `S`.
    pub fn eigen_relative_error(&self, series: &ChebSeries) -> f64 {
        self.eigen
            .values
            .iter()
            .zip(&self.inv_p)
            .map(|(&l, &ip)| {
                let p2 = series.eval(l).powi(2);
                ((ip - p2) / p2).abs()
            })
            .fold(0.0, f64::max)
    }

    /// `(vᵀΣv, vᵀΣ_s v)` from the spectral weights of `D⁻¹v`.
    pub fn quadratic_forms(&self, v: &[f64], sim_weights: &[f64]) -> (f64, f64) {
        let dv: Vec<f64> = v.iter().zip(&self.d_inv).map(|(a, b)| a * b).collect();
        let w = self.eigen.project(&dv);
        w.iter()
            .zip(&self.inv_p)
            .zip(sim_weights)
            .fold((0.0, 0.0), |(t, s), ((wi, ip), g)| (t + wi * wi * ip, s + wi * wi * g))
    }
}

/// `P(S)^{-1/2}` by eigen-decomposition (`n ≤` [`DENSE_LIMIT`]).
pub fn dense_sqrt_inv_oracle(op: &PrecisionOperator) -> Result<DenseMatrix> {
    Ok(SpectralOracle::new(op)?.sqrt_inv())
}

/// Two-sided chi-square variance test of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceTestReport {
    /// `t = (N − 1) S² / σ₀²`
    pub statistic: f64,
    pub sample_variance: f64,
    /// `χ²_{α/2, N−1}`
    pub lower: f64,
    /// `χ²_{1−α/2, N−1}`
    pub upper: f64,
    pub reject: bool,
}

pub fn variance_test(samples: &[f64], target_var: f64, alpha: f64) -> Result<VarianceTestReport> {
    if !(target_var > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "target variance {target_var} must be > 0"
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidParameter(format!("significance {alpha} outside (0, 1)")));
    }
    let model = VarianceTestModel::new(samples.len(), alpha)?;
    let n = samples.len() as f64;
    let mean = samples.iter().sum::<f64>() / n;
    let ss: f64 = samples.iter().map(|x| (x - mean).powi(2)).sum();
    let statistic = ss / target_var;
    Ok(VarianceTestReport {
        statistic,
        sample_variance: ss / (n - 1.0),
        lower: model.lower,
        upper: model.upper,
        reject: statistic < model.lower || statistic > model.upper,
    })
}

/// Outcome of [`projection_test_suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionSummary {
    pub n_directions: usize,
    /// Largest exact rejection probability `R_α(X_v)` over the directions.
    pub max_rejection: f64,
    /// `(1 + γ)α`
    pub bound: f64,
    /// Largest `|vᵀ(Σ − Σ_s)v| / vᵀΣ_s v` over the directions.
    pub max_rayleigh_deviation: f64,
    /// Largest relative spectral error over the eigenvalues of `S`; it
    /// dominates the Rayleigh deviation for every direction.
    pub eigen_bound: f64,
}

impl ProjectionSummary {
    /// Whether `max_rejection ≤ bound + tol`.
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rejection <= self.bound + tol
    }
}

/// Exact rejection probabilities of the variance test along random unit
/// directions, with `Σ` and `Σ_s` from the dense oracle.
pub fn projection_test_suite(
    op: &PrecisionOperator,
    series: &ChebSeries,
    cfg: &TestConfig,
    n_directions: usize,
    seed: u64,
) -> Result<ProjectionSummary> {
    let oracle = SpectralOracle::new(op)?;
    let model = VarianceTestModel::new(cfg.n_samples, cfg.alpha)?;
    let sim_weights: Vec<f64> = oracle
        .eigen
        .values
        .iter()
        .map(|&l| series.eval(l).powi(2))
        .collect();
    let n = op.n();
    let per_direction = (0..n_directions)
        .into_par_iter()
        .map(|k| {
            let v = standard_normal_vector(seed, k as u64, n);
            let (true_var, sim_var) = oracle.quadratic_forms(&v, &sim_weights);
            if !(sim_var > 0.0) {
                return Err(Error::ModelViolation(format!(
                    "simulated variance {sim_var} along direction {k}"
                )));
            }
            let x = true_var / sim_var;
            Ok((model.rejection_prob(x)?, (x - 1.0).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    let (max_rejection, max_rayleigh_deviation) = per_direction
        .iter()
        .fold((0.0f64, 0.0f64), |(r, d), &(ri, di)| (r.max(ri), d.max(di)));
    Ok(ProjectionSummary {
        n_directions,
        max_rejection,
        bound: (1.0 + cfg.gamma) * cfg.alpha,
        max_rayleigh_deviation,
        eigen_bound: oracle.eigen_relative_error(series),
    })
}
