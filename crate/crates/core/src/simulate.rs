//! Sampling `z = D⁻¹·p(S)·ε` with `p` a Chebyshev approximation of `1/sqrt(P)`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::chebyshev::{ApplyStats, ChebSeries};
use crate::error::{Error, Result};
use crate::order::{select_order, OrderDecision, TestConfig};
use crate::precision::PrecisionOperator;
use crate::sparse::Interval;

/// Upper limit for the order search.
pub const DEFAULT_K_MAX: usize = 2000;

/// `n` standard normal deviates from stream `stream` of a ChaCha8 generator
/// seeded with `seed`, through the Box–Muller transform.
pub fn standard_normal_vector(seed: u64, stream: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut out = Vec::with_capacity(n + 1);
    while out.len() < n {
        let u1: f64 = 1.0 - rng.random::<f64>();
        let u2: f64 = rng.random();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (std::f64::consts::TAU * u2).sin_cos();
        out.push(r * c);
        out.push(r * s);
    }
    out.truncate(n);
    out
}

#[derive(Debug, Clone)]
pub struct SimRequest<'a> {
    pub op: &'a PrecisionOperator,
    pub cfg: TestConfig,
    pub seed: u64,
    pub n_sims: usize,
    pub forced_order: Option<usize>,
    pub k_max: usize,
}

impl<'a> SimRequest<'a> {
    pub fn new(op: &'a PrecisionOperator, cfg: TestConfig, seed: u64, n_sims: usize) -> Self {
        SimRequest {
            op,
            cfg,
            seed,
            n_sims,
            forced_order: None,
            k_max: DEFAULT_K_MAX,
        }
    }

    pub fn with_forced_order(mut self, order: usize) -> Self {
        self.forced_order = Some(order);
        self
    }
}

#[derive(Debug, Clone)]
pub struct SimResult {
    pub vectors: Vec<Vec<f64>>,
    pub decision: OrderDecision,
    pub interval: Interval,
    /// Series actually applied, of order `decision.effective_order`.
    pub series: ChebSeries,
    pub matvec_count: usize,
    /// Work vectors allocated by one replicate.
    pub work_vectors: usize,
    pub wall_time: Duration,
}

/// `z = D⁻¹·p(S)·ε` for one noise vector.
pub fn sample_with_noise(
    op: &PrecisionOperator,
    series: &ChebSeries,
    eps: &[f64],
) -> Result<(Vec<f64>, ApplyStats)> {
    let (mut z, stats) = series.apply(op.s(), eps)?;
    op.d().solve_in_place(&mut z);
    if let Some(i) = z.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite(format!(
            "simulated value at node {i}; check the interval and P"
        )));
    }
    Ok((z, stats))
}

/// Draws `n_sims` replicates. Replicate `r` uses noise stream `r`, so the
/// output does not depend on the number of threads.
///
/// Without a forced order, the order comes from the chi-square criterion of
/// `cfg`; when `cfg.eta` is set, the reduction budget uses the largest noise
/// norm among the replicates.
pub fn simulate(req: &SimRequest) -> Result<SimResult> {
    if req.n_sims == 0 {
        return Err(Error::InvalidParameter("n_sims must be at least 1".into()));
    }
    let start = Instant::now();
    let op = req.op;
    let n = op.n();
    let interval = op.interval();
    let noise: Vec<Vec<f64>> = (0..req.n_sims)
        .into_par_iter()
        .map(|r| standard_normal_vector(req.seed, r as u64, n))
        .collect();

    let (decision, series) = match req.forced_order {
        Some(k) => (OrderDecision::forced(k), op.target().chebyshev_series(interval, k)?),
        None => {
            let norm_eps = noise
                .iter()
                .map(|e| e.iter().map(|v| v * v).sum::<f64>().sqrt())
                .fold(0.0, f64::max);
            select_order(
                op.target(),
                interval,
                &req.cfg,
                op.d().inverse_max_abs(),
                norm_eps,
                req.k_max,
            )?
        }
    };

    let outputs = noise
        .par_iter()
        .map(|eps| sample_with_noise(op, &series, eps))
        .collect::<Result<Vec<_>>>()?;
    let matvec_count = outputs.iter().map(|(_, s)| s.matvecs).sum();
    let work_vectors = outputs.iter().map(|(_, s)| s.work_vectors).max().unwrap_or(0);
    let vectors = outputs.into_iter().map(|(z, _)| z).collect();
    Ok(SimResult {
        vectors,
        decision,
        interval,
        series,
        matvec_count,
        work_vectors,
        wall_time: start.elapsed(),
    })
}

/// `n·‖D⁻¹‖_∞·max_x (1/sqrt(P(x)) − p(x))²` over `grid` equispaced points of
/// the series interval. The entrywise gap between `D⁻¹P(S)^{-1/2}` and
/// `D⁻¹p(S)` is at most `sqrt(‖D⁻¹‖_∞ · bound)`.
pub fn approx_error_bound(series: &ChebSeries, op: &PrecisionOperator, grid: usize) -> f64 {
    let grid = grid.max(2);
    let iv = series.interval();
    let h = iv.width() / (grid - 1) as f64;
    let target = op.target();
    let worst = (0..grid)
        .map(|i| {
            let x = if i == grid - 1 { iv.b } else { iv.a + h * i as f64 };
            let d = target.eval(x) - series.eval(x);
            d * d
        })
        .fold(0.0, f64::max);
    op.n() as f64 * op.d().inverse_max_abs() * worst
}

/// Grid values with node `(i, j)` at position `i + nx·j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Raster {
    pub nx: usize,
    pub ny: usize,
    pub h: f64,
    pub values: Vec<f64>,
}

impl Raster {
    pub fn new(nx: usize, ny: usize, h: f64, values: Vec<f64>) -> Result<Self> {
        if values.len() != nx * ny {
            return Err(Error::DimensionMismatch {
                expected: nx * ny,
                got: values.len(),
            });
        }
        Ok(Raster { nx, ny, h, values })
    }

    /// Sub-grid of `cx × cy` nodes starting at node `(x0, y0)`.
    pub fn crop(&self, x0: usize, y0: usize, cx: usize, cy: usize) -> Result<Raster> {
        if x0 + cx > self.nx || y0 + cy > self.ny {
            return Err(Error::InvalidParameter(format!(
                "crop {cx}x{cy} at ({x0}, {y0}) exceeds {}x{}",
                self.nx, self.ny
            )));
        }
        let mut values = Vec::with_capacity(cx * cy);
        for j in y0..y0 + cy {
            let row = x0 + self.nx * j;
            values.extend_from_slice(&self.values[row..row + cx]);
        }
        Raster::new(cx, cy, self.h, values)
    }

    /// Header line `nx ny h`, then one comma-separated line per grid row.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{} {} {:?}\n", self.nx, self.ny, self.h);
        for row in self.values.chunks(self.nx) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            writeln!(out, "{}", line.join(",")).unwrap();
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| Error::parse(1, "empty raster"))?;
        let f: Vec<&str> = head.split_whitespace().collect();
        if f.len() != 3 {
            return Err(Error::parse(1, "expected `nx ny h` header"));
        }
        let nx = f[0].parse().map_err(|_| Error::parse(1, "bad nx"))?;
        let ny = f[1].parse().map_err(|_| Error::parse(1, "bad ny"))?;
        let h = f[2].parse().map_err(|_| Error::parse(1, "bad h"))?;
        let mut values = Vec::new();
        for (i, l) in lines {
            for tok in l.split(',') {
                values.push(
                    tok.trim()
                        .parse()
                        .map_err(|_| Error::parse(i + 1, format!("bad value `{tok}`")))?,
                );
            }
        }
        Raster::new(nx, ny, h, values)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_csv()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv(&text)
    }
}
