//! Exact sampling by a banded Cholesky factor of `Q`.

use crate::error::{Error, Result};
use crate::precision::PrecisionOperator;

/// Upper limit on `n·(bandwidth + 1)` stored entries.
pub const BAND_STORAGE_LIMIT: usize = 100_000_000;

/// `Q = L·Lᵀ` with `L` lower triangular of half-bandwidth `bw`.
#[derive(Debug, Clone)]
pub struct BandedCholesky {
    n: usize,
    bw: usize,
    /// `L[i, i − k]` at `i·(bw + 1) + k`.
    l: Vec<f64>,
}

/// Half-bandwidth of `S`, i.e. `max |i − j|` over stored entries.
pub fn bandwidth(op: &PrecisionOperator) -> usize {
    op.s().iter().map(|(i, j, _)| i.abs_diff(j)).max().unwrap_or(0)
}

/// Lower band of `Q` (row `i`, offset `k` gives `Q[i, i − k]`) and its
/// half-bandwidth. Columns further than twice the bandwidth apart have
/// disjoint supports, so each probe `Q·Σ e_j` recovers a whole family of
/// columns at once.
pub fn precision_band(op: &PrecisionOperator) -> Result<(usize, Vec<f64>)> {
    let n = op.n();
    let bw = (bandwidth(op) * op.target().degree()).min(n.saturating_sub(1));
    if n.saturating_mul(bw + 1) > BAND_STORAGE_LIMIT {
        return Err(Error::TooLarge {
            n: n * (bw + 1),
            limit: BAND_STORAGE_LIMIT,
        });
    }
    let stride = 2 * bw + 1;
    let mut band = vec![0.0; n * (bw + 1)];
    for color in 0..stride.min(n) {
        let mut probe = vec![0.0; n];
        for j in (color..n).step_by(stride) {
            probe[j] = 1.0;
        }
        let y = op.apply_precision(&probe)?;
        for j in (color..n).step_by(stride) {
            for i in j..(j + bw + 1).min(n) {
                band[i * (bw + 1) + (i - j)] = y[i];
            }
        }
    }
    Ok((bw, band))
}

impl BandedCholesky {
    pub fn new(op: &PrecisionOperator) -> Result<Self> {
        let n = op.n();
        let (bw, mut l) = precision_band(op)?;
        let w = bw + 1;
        for i in 0..n {
            let lo = i.saturating_sub(bw);
            for j in lo..=i {
                let mut s = l[i * w + (i - j)];
                for k in lo.max(j.saturating_sub(bw))..j {
                    s -= l[i * w + (i - k)] * l[j * w + (j - k)];
                }
                if i == j {
                    if !(s > 0.0) {
                        return Err(Error::ModelViolation(format!(
                            "Q is not positive definite (pivot {i} = {s})"
                        )));
                    }
                    l[i * w] = s.sqrt();
                } else {
                    l[i * w + (i - j)] = s / l[j * w];
                }
            }
        }
        Ok(BandedCholesky { n, bw, l })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    /// Solves `Lᵀ z = ε`, so that `z` has covariance `Q⁻¹` when `ε` is white.
    pub fn sample(&self, eps: &[f64]) -> Result<Vec<f64>> {
        self.check_len(eps)?;
        let w = self.bw + 1;
        let mut z = eps.to_vec();
        for i in (0..self.n).rev() {
            let mut s = z[i];
            for k in i + 1..(i + w).min(self.n) {
                s -= self.l[k * w + (k - i)] * z[k];
            }
            z[i] = s / self.l[i * w];
        }
        Ok(z)
    }

    /// `Q⁻¹ b`.
    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        self.check_len(b)?;
        let w = self.bw + 1;
        let mut y = b.to_vec();
        for i in 0..self.n {
            let mut s = y[i];
            for k in i.saturating_sub(self.bw)..i {
                s -= self.l[i * w + (i - k)] * y[k];
            }
            y[i] = s / self.l[i * w];
        }
        self.sample(&y)
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        Ok(())
    }
}
