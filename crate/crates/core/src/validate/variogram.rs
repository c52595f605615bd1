//! Isotropic empirical variograms of fields on regular grids.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Above this many node pairs per field, pairs are subsampled.
pub const MAX_PAIRS: usize = 10_000_000;

/// `nx × ny` nodes with spacing `h`; node `(i, j)` is at index `i + nx·j`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridGeometry {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
}

impl GridGeometry {
    pub fn n(&self) -> usize {
        self.nx * self.ny
    }
}

/// Only non-empty bins are listed.
#[derive(Debug, Clone, PartialEq)]
pub struct VariogramEstimate {
    /// Bin centers.
    pub lags: Vec<f64>,
    /// Mean pair distance inside each bin.
    pub mean_distance: Vec<f64>,
    pub gamma_hat: Vec<f64>,
    /// Node pairs per field in each bin.
    pub counts: Vec<usize>,
}

struct OffsetPart {
    bin: usize,
    dist: f64,
    count: usize,
    sum: f64,
}

/// `γ̂(h)`: mean of `½(z_i − z_j)²` over all fields and over node pairs whose
/// distance falls in the bin. Bin `k = 1..=n_bins` has width
/// `w = max_lag / n_bins` and covers `[(k − ½)w, (k + ½)w)`.
pub fn empirical_variogram(
    vectors: &[Vec<f64>],
    geom: GridGeometry,
    max_lag: f64,
    n_bins: usize,
    seed: u64,
) -> Result<VariogramEstimate> {
    if vectors.is_empty() {
        return Err(Error::InvalidParameter("variogram needs at least one field".into()));
    }
    if let Some(v) = vectors.iter().find(|v| v.len() != geom.n()) {
        return Err(Error::DimensionMismatch {
            expected: geom.n(),
            got: v.len(),
        });
    }
    if n_bins == 0 || !(max_lag > 0.0) || !(geom.h > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "need n_bins >= 1, max_lag > 0 and h > 0 (got {n_bins}, {max_lag}, {})",
            geom.h
        )));
    }
    let width = max_lag / n_bins as f64;
    let reach = ((max_lag + 0.5 * width) / geom.h).ceil() as i64;
    let (nx, ny) = (geom.nx as i64, geom.ny as i64);

    let mut offsets = Vec::new();
    for dy in 0..=reach.min(ny - 1) {
        for dx in -reach.min(nx - 1)..=reach.min(nx - 1) {
            if dy == 0 && dx <= 0 {
                continue;
            }
            let dist = geom.h * ((dx * dx + dy * dy) as f64).sqrt();
            let bin = (dist / width).round() as usize;
            if bin >= 1 && bin <= n_bins {
                offsets.push((dx, dy, bin, dist));
            }
        }
    }
    let pairs_at = |dx: i64, dy: i64| ((nx - dx.abs()) * (ny - dy)) as usize;
    let total: usize = offsets.iter().map(|&(dx, dy, _, _)| pairs_at(dx, dy)).sum();
    let keep = if total > MAX_PAIRS {
        MAX_PAIRS as f64 / total as f64
    } else {
        1.0
    };

    let parts: Vec<OffsetPart> = offsets
        .par_iter()
        .enumerate()
        .map(|(o, &(dx, dy, bin, dist))| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(o as u64);
            let mut pairs = Vec::with_capacity(pairs_at(dx, dy));
            for j in 0..ny - dy {
                for i in (-dx).max(0)..nx - dx.max(0) {
                    if keep < 1.0 && rng.random::<f64>() >= keep {
                        continue;
                    }
                    let a = (i + nx * j) as usize;
                    let b = (i + dx + nx * (j + dy)) as usize;
                    pairs.push((a, b));
                }
            }
            let mut sum = 0.0;
            for z in vectors {
                for &(a, b) in &pairs {
                    let d = z[a] - z[b];
                    sum += 0.5 * d * d;
                }
            }
            OffsetPart {
                bin,
                dist,
                count: pairs.len(),
                sum,
            }
        })
        .collect();

    let mut sums = vec![0.0; n_bins + 1];
    let mut dist_sums = vec![0.0; n_bins + 1];
    let mut counts = vec![0usize; n_bins + 1];
    for p in &parts {
        sums[p.bin] += p.sum;
        dist_sums[p.bin] += p.dist * p.count as f64;
        counts[p.bin] += p.count;
    }
    let mut est = VariogramEstimate {
        lags: Vec::new(),
        mean_distance: Vec::new(),
        gamma_hat: Vec::new(),
        counts: Vec::new(),
    };
    let n_fields = vectors.len() as f64;
    for k in 1..=n_bins {
        if counts[k] == 0 {
            log::warn!("variogram bin {k} (lag {}) has no pairs and is dropped", k as f64 * width);
            continue;
        }
        let c = counts[k] as f64;
        est.lags.push(k as f64 * width);
        est.mean_distance.push(dist_sums[k] / c);
        est.gamma_hat.push(sums[k] / (c * n_fields));
        est.counts.push(counts[k]);
    }
    Ok(est)
}

impl VariogramEstimate {
    /// Model values at the mean pair distance of each bin.
    pub fn model_values(&self, model: impl Fn(f64) -> Result<f64>) -> Result<Vec<f64>> {
        self.mean_distance.iter().map(|&h| model(h)).collect()
    }

    /// Rectangle-rule `∫ |γ̂ − γ|` over bins with center at most `max_lag`.
    pub fn integrated_deviation(&self, model: impl Fn(f64) -> Result<f64>, max_lag: f64) -> Result<f64> {
        let m = self.model_values(model)?;
        let mut total = 0.0;
        let mut prev = 0.0;
        for (k, &lag) in self.lags.iter().enumerate() {
            if lag > max_lag * (1.0 + 1e-12) {
                break;
            }
            total += (self.gamma_hat[k] - m[k]).abs() * (lag - prev);
            prev = lag;
        }
        Ok(total)
    }

    /// `lag,gamma_hat,model_gamma,count` with the lag column holding bin centers.
    pub fn to_csv(&self, model: impl Fn(f64) -> Result<f64>) -> Result<String> {
        let m = self.model_values(model)?;
        let mut out = String::from("lag,gamma_hat,model_gamma,count\n");
        for k in 0..self.lags.len() {
            writeln!(
                out,
                "{:?},{:?},{:?},{}",
                self.lags[k], self.gamma_hat[k], m[k], self.counts[k]
            )
            .unwrap();
        }
        Ok(out)
    }
}
