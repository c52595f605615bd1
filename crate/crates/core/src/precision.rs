//! The triple `(S, D, P)` defining `Q = D·P(S)·D`.

use std::path::Path;

use crate::chebyshev::TargetFunction;
use crate::error::{Error, Result};
use crate::simulate::standard_normal_vector;
use crate::sparse::{market, DiagonalMatrix, Interval, SparseSymMatrix};

/// Samples used to check that `P` stays positive on the spectral interval.
const POSITIVITY_SAMPLES: usize = 1001;

#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionOperator {
    s: SparseSymMatrix,
    d: DiagonalMatrix,
    target: TargetFunction,
}

impl PrecisionOperator {
    /// Checks dimensions, positivity of `D` and positivity of `P` on the
    /// clamped Gershgorin interval of `S`.
    pub fn new(s: SparseSymMatrix, d: DiagonalMatrix, target: TargetFunction) -> Result<Self> {
        if s.n() != d.n() {
            return Err(Error::DimensionMismatch {
                expected: s.n(),
                got: d.n(),
            });
        }
        if let Some(i) = d.entries().iter().position(|&v| !(v > 0.0)) {
            return Err(Error::InvalidParameter(format!("D[{i}] is not strictly positive")));
        }
        let op = PrecisionOperator { s, d, target };
        op.target.check_positive(op.interval(), POSITIVITY_SAMPLES)?;
        Ok(op)
    }

    pub fn s(&self) -> &SparseSymMatrix {
        &self.s
    }

    pub fn d(&self) -> &DiagonalMatrix {
        &self.d
    }

    pub fn target(&self) -> &TargetFunction {
        &self.target
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    /// `[0, max_i Σ_j |S_ij|]`, widened if it has zero width.
    pub fn interval(&self) -> Interval {
        self.s.gershgorin_interval(true).non_degenerate()
    }

    /// Spot check of positive semi-definiteness: `probes` Rayleigh quotients
    /// of Gaussian directions must be at least `-1e-10 · ‖S‖_F`.
    pub fn check_psd(&self, probes: usize, seed: u64) -> Result<()> {
        let floor = -1e-10 * self.s.trace_bound();
        for p in 0..probes {
            let v = standard_normal_vector(seed, p as u64, self.n());
            let r = self.s.rayleigh_quotient(&v)?;
            if r < floor {
                return Err(Error::ModelViolation(format!(
                    "S has Rayleigh quotient {r} below {floor}"
                )));
            }
        }
        Ok(())
    }

    /// `P(S)·x` by Horner's scheme.
    pub fn apply_poly(&self, x: &[f64]) -> Result<Vec<f64>> {
        let b = self.target.poly_coeffs();
        let mut w: Vec<f64> = x.iter().map(|v| b[b.len() - 1] * v).collect();
        let mut sw = vec![0.0; x.len()];
        for &bl in b[..b.len() - 1].iter().rev() {
            self.s.matvec_into(&w, &mut sw)?;
            for ((wi, si), xi) in w.iter_mut().zip(&sw).zip(x) {
                *wi = si + bl * xi;
            }
        }
        Ok(w)
    }

    /// `Q·x = D·P(S)·D·x`.
    pub fn apply_precision(&self, x: &[f64]) -> Result<Vec<f64>> {
        let dx: Vec<f64> = x.iter().zip(self.d.entries()).map(|(v, d)| v * d).collect();
        let mut y = self.apply_poly(&dx)?;
        for (yi, d) in y.iter_mut().zip(self.d.entries()) {
            *yi *= d;
        }
        Ok(y)
    }

    /// Writes `S` and `D` as Matrix Market files.
    pub fn write_market(&self, s_path: &Path, d_path: &Path) -> Result<()> {
        market::write(s_path, &self.s)?;
        market::write_diagonal(d_path, &self.d)
    }
}
