//! Chebyshev series on an interval `[a, b]` and their action on symmetric
//! operators through the three-term recurrence.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::sparse::{Interval, LinearOperator};

/// Which function of the polynomial `P` is approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetMode {
    /// `1 / sqrt(P(x))`
    InvSqrt,
    /// `1 / P(x)`
    Inv,
}

/// `f = 1/sqrt(P)` or `f = 1/P` for a polynomial `P(x) = Σ b_l x^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct TargetFunction {
    coeffs: Vec<f64>,
    mode: TargetMode,
}

impl TargetFunction {
    pub fn new(coeffs: Vec<f64>, mode: TargetMode) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("polynomial needs at least one coefficient".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("polynomial coefficient {c}")));
        }
        Ok(TargetFunction { coeffs, mode })
    }

    /// `P(x) = (1 + x)^power`, the Matérn SPDE polynomial.
    pub fn one_plus_x_pow(power: u32, mode: TargetMode) -> Self {
        let mut coeffs = vec![1.0];
        for _ in 0..power {
            let mut next = vec![0.0; coeffs.len() + 1];
            for (l, c) in coeffs.iter().enumerate() {
                next[l] += c;
                next[l + 1] += c;
            }
            coeffs = next;
        }
        TargetFunction { coeffs, mode }
    }

    pub fn poly_coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn mode(&self) -> TargetMode {
        self.mode
    }

    pub fn with_mode(&self, mode: TargetMode) -> Self {
        TargetFunction {
            coeffs: self.coeffs.clone(),
            mode,
        }
    }

    /// Degree `L` of `P` (trailing zeros ignored).
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0)
    }

    pub fn poly(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let p = self.poly(x);
        match self.mode {
            TargetMode::InvSqrt => 1.0 / p.sqrt(),
            TargetMode::Inv => 1.0 / p,
        }
    }

    /// Samples `P` on `samples` equispaced points of the interval and
    /// fails if any value is not strictly positive.
    pub fn check_positive(&self, interval: Interval, samples: usize) -> Result<()> {
        let samples = samples.max(2);
        for i in 0..samples {
            let x = interval.a + interval.width() * i as f64 / (samples - 1) as f64;
            let p = self.poly(x);
            if !(p > 0.0) || !p.is_finite() {
                return Err(Error::ModelViolation(format!(
                    "P({x}) = {p} is not strictly positive on [{}, {}]",
                    interval.a, interval.b
                )));
            }
        }
        Ok(())
    }

    pub fn chebyshev_series(&self, interval: Interval, order: usize) -> Result<ChebSeries> {
        chebyshev_coefficients(|x| self.eval(x), interval, order, default_quadrature_order(order))
    }
}

/// Affine map of `[a, b]` onto `[-1, 1]`.
pub fn shift_to_unit(x: f64, interval: Interval) -> Result<f64> {
    let Interval { a, b } = interval;
    if !(b > a) {
        return Err(Error::DegenerateInterval { a, b });
    }
    Ok((2.0 * x - b - a) / (b - a))
}

/// Default number of cosine-transform panels for truncation order `k`.
pub fn default_quadrature_order(k: usize) -> usize {
    (8 * (k + 1)).max(512).next_power_of_two()
}

/// Chebyshev coefficients `c_0..c_K` of `f` on `interval`.
///
/// Samples `f` at the `J + 1` mapped Chebyshev–Lobatto points
/// `cos(jπ/J)` and evaluates the trapezoidal cosine sums
/// `c_k = (2/J) Σ'' f_j cos(kjπ/J)` with one FFT of the even extension.
/// `c_0` is kept raw: the series carries the ½ at evaluation time.
pub fn chebyshev_coefficients(
    f: impl Fn(f64) -> f64,
    interval: Interval,
    order: usize,
    quad_order: usize,
) -> Result<ChebSeries> {
    let Interval { a, b } = interval;
    if !(b > a) {
        return Err(Error::DegenerateInterval { a, b });
    }
    let min = 2 * (order + 1);
    if quad_order < min {
        return Err(Error::QuadratureTooSmall {
            j: quad_order,
            k: order,
            min,
        });
    }
    let j_max = quad_order;
    let half_width = 0.5 * (b - a);
    let mid = 0.5 * (b + a);
    let mut samples = Vec::with_capacity(j_max + 1);
    for j in 0..=j_max {
        let t = (std::f64::consts::PI * j as f64 / j_max as f64).cos();
        let x = mid + half_width * t;
        let fx = f(x);
        if !fx.is_finite() {
            return Err(Error::NonFinite(format!(
                "target function is {fx} at x = {x}; P is not positive on [{a}, {b}]"
            )));
        }
        samples.push(fx);
    }

    let len = 2 * j_max;
    let mut buf: Vec<Complex<f64>> = Vec::with_capacity(len);
    buf.extend(samples.iter().map(|&v| Complex::new(v, 0.0)));
    buf.extend(samples[1..j_max].iter().rev().map(|&v| Complex::new(v, 0.0)));
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);

    let coeffs = buf[..=order]
        .iter()
        .map(|z| z.re / j_max as f64)
        .collect();
    ChebSeries::new(interval, coeffs)
}

/// Counters reported by [`ChebSeries::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ApplyStats {
    pub matvecs: usize,
    /// Length-`n` vectors allocated by the recurrence.
    pub work_vectors: usize,
}

/// Truncated shifted Chebyshev series `½c_0 + Σ_{k=1}^K c_k T_k^{[a,b]}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebSeries {
    interval: Interval,
    coeffs: Vec<f64>,
}

impl ChebSeries {
    pub fn new(interval: Interval, coeffs: Vec<f64>) -> Result<Self> {
        if !(interval.b > interval.a) {
            return Err(Error::DegenerateInterval {
                a: interval.a,
                b: interval.b,
            });
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("series needs at least c_0".into()));
        }
        if let Some(c) = coeffs.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("Chebyshev coefficient {c}")));
        }
        Ok(ChebSeries { interval, coeffs })
    }

    pub fn interval(&self) -> Interval {
        self.interval
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Truncation order `K`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The same series cut at order `k` (no-op when `k >= K`).
    pub fn truncated(&self, k: usize) -> ChebSeries {
        ChebSeries {
            interval: self.interval,
            coeffs: self.coeffs[..=k.min(self.order())].to_vec(),
        }
    }

    fn recurrence_scalars(&self) -> (f64, f64) {
        let Interval { a, b } = self.interval;
        (2.0 / (b - a), (b + a) / (b - a))
    }

    pub fn is_extrapolation(&self, x: f64) -> bool {
        !self.interval.contains(x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (alpha, beta) = self.recurrence_scalars();
        let t = alpha * x - beta;
        let mut sum = 0.5 * self.coeffs[0];
        if self.coeffs.len() == 1 {
            return sum;
        }
        let (mut prev, mut cur) = (1.0, t);
        sum += self.coeffs[1] * cur;
        for &c in &self.coeffs[2..] {
            let next = 2.0 * t * cur - prev;
            prev = cur;
            cur = next;
            sum += c * cur;
        }
        sum
    }

    /// Evaluation plus a flag set when `x` lies outside the interval.
    pub fn eval_flagged(&self, x: f64) -> (f64, bool) {
        (self.eval(x), self.is_extrapolation(x))
    }

    /// `u = ½c_0 ε + Σ_{k=1}^K c_k T_k^{[a,b]}(S) ε` with `K` applications
    /// of `op` and four work vectors.
    ///
    /// With `t = αS − β`, `α = 2/(b−a)`, `β = (b+a)/(b−a)`, the vectors
    /// `v_k = T_k(t) ε` obey `v_1 = αSε − βε` and
    /// `v_{k+1} = 2αS v_k − 2β v_k − v_{k−1}`.
    pub fn apply<A: LinearOperator + ?Sized>(
        &self,
        op: &A,
        eps: &[f64],
    ) -> Result<(Vec<f64>, ApplyStats)> {
        let n = op.dim();
        if eps.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: eps.len(),
            });
        }
        let mut stats = ApplyStats::default();
        let c = &self.coeffs;
        let mut u: Vec<f64> = eps.iter().map(|e| 0.5 * c[0] * e).collect();
        stats.work_vectors += 1;
        if c.len() == 1 {
            return Ok((u, stats));
        }

        let (alpha, beta) = self.recurrence_scalars();
        let (alpha2, beta2) = (2.0 * alpha, 2.0 * beta);
        let mut u_prev2 = eps.to_vec();
        let mut u_prev1 = vec![0.0; n];
        let mut u_cur = vec![0.0; n];
        stats.work_vectors += 3;

        op.apply(eps, &mut u_prev1);
        stats.matvecs += 1;
        for ((p1, e), ui) in u_prev1.iter_mut().zip(eps).zip(u.iter_mut()) {
            *p1 = alpha * *p1 - beta * e;
            *ui += c[1] * *p1;
        }

        for &ck in &c[2..] {
            op.apply(&u_prev1, &mut u_cur);
            stats.matvecs += 1;
            for (((cur, p1), p2), ui) in u_cur
                .iter_mut()
                .zip(&u_prev1)
                .zip(&u_prev2)
                .zip(u.iter_mut())
            {
                *cur = alpha2 * *cur - beta2 * p1 - p2;
                *ui += ck * *cur;
            }
            std::mem::swap(&mut u_prev2, &mut u_prev1);
            std::mem::swap(&mut u_prev1, &mut u_cur);
        }
        Ok((u, stats))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{:e} {:e} {}", self.interval.a, self.interval.b, self.order()).unwrap();
        for c in &self.coeffs {
            writeln!(out, "{c:e}").unwrap();
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, head) = lines.next().ok_or_else(|| Error::parse(1, "empty series file"))?;
        let tok: Vec<&str> = head.split_whitespace().collect();
        if tok.len() != 3 {
            return Err(Error::parse(1, "expected `a b K`"));
        }
        let a: f64 = tok[0].parse().map_err(|_| Error::parse(1, "bad a"))?;
        let b: f64 = tok[1].parse().map_err(|_| Error::parse(1, "bad b"))?;
        let k: usize = tok[2].parse().map_err(|_| Error::parse(1, "bad K"))?;
        let mut coeffs = Vec::with_capacity(k + 1);
        for (idx, line) in lines {
            let v: f64 = line
                .trim()
                .parse()
                .map_err(|_| Error::parse(idx + 1, format!("bad coefficient {line}")))?;
            coeffs.push(v);
        }
        if coeffs.len() != k + 1 {
            return Err(Error::parse(
                0,
                format!("expected {} coefficients, found {}", k + 1, coeffs.len()),
            ));
        }
        ChebSeries::new(Interval::new(a, b)?, coeffs)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::{CountingOperator, SparseSymMatrix};
    use proptest::prelude::*;

    fn unit() -> Interval {
        Interval::new(-1.0, 1.0).unwrap()
    }

    #[test]
    fn shift_examples() {
        let iv = Interval::new(0.0, 10.0).unwrap();
        assert_eq!(shift_to_unit(0.0, iv).unwrap(), -1.0);
        assert_eq!(shift_to_unit(5.0, iv).unwrap(), 0.0);
        assert_eq!(shift_to_unit(10.0, iv).unwrap(), 1.0);
        assert_eq!(shift_to_unit(2.5, iv).unwrap(), -0.5);
        assert!(shift_to_unit(1.0, Interval { a: 2.0, b: 2.0 }).is_err());
    }

    #[test]
    fn coefficients_of_pure_chebyshev_polynomials() {
        let s = chebyshev_coefficients(|x| x, unit(), 3, 512).unwrap();
        for (k, want) in [0.0, 1.0, 0.0, 0.0].iter().enumerate() {
            assert!((s.coeffs()[k] - want).abs() < 1e-14, "k={k}");
        }
        let s = chebyshev_coefficients(|x| 2.0 * x * x - 1.0, unit(), 3, 512).unwrap();
        for (k, want) in [0.0, 0.0, 1.0, 0.0].iter().enumerate() {
            assert!((s.coeffs()[k] - want).abs() < 1e-14, "k={k}");
        }
    }

    #[test]
    fn constant_one_has_c0_two() {
        let s = chebyshev_coefficients(|_| 1.0, unit(), 2, 512).unwrap();
        assert!((s.coeffs()[0] - 2.0).abs() < 1e-15);
        assert!((s.eval(0.3) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            chebyshev_coefficients(|x| x, unit(), 10, 8),
            Err(Error::QuadratureTooSmall { .. })
        ));
        let f = TargetFunction::new(vec![-1.0, 1.0], TargetMode::InvSqrt).unwrap();
        assert!(matches!(
            f.chebyshev_series(Interval::new(0.0, 2.0).unwrap(), 4),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn eval_pure_t3() {
        let s = ChebSeries::new(unit(), vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        assert!((s.eval(0.5) + 1.0).abs() < 1e-15);
        let lin = chebyshev_coefficients(|x| x, unit(), 1, 512).unwrap();
        assert!((lin.eval(0.7) - 0.7).abs() < 1e-15);
        assert!(lin.eval_flagged(1.5).1);
        assert!(!lin.eval_flagged(0.5).1);
    }

    #[test]
    fn inverse_sqrt_series_converges() {
        let f = TargetFunction::new(vec![1.0, 1.0], TargetMode::InvSqrt).unwrap();
        let s = f.chebyshev_series(Interval::new(0.0, 10.0).unwrap(), 40).unwrap();
        assert!((s.eval(3.0) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn binomial_polynomials() {
        assert_eq!(
            TargetFunction::one_plus_x_pow(2, TargetMode::InvSqrt).poly_coeffs(),
            &[1.0, 2.0, 1.0]
        );
        assert_eq!(
            TargetFunction::one_plus_x_pow(3, TargetMode::Inv).poly_coeffs(),
            &[1.0, 3.0, 3.0, 1.0]
        );
        assert_eq!(TargetFunction::one_plus_x_pow(0, TargetMode::Inv).degree(), 0);
    }

    #[test]
    fn constant_series_is_identity_action() {
        let s = ChebSeries::new(Interval::new(0.0, 4.0).unwrap(), vec![2.0, 0.0, 0.0]).unwrap();
        let m = SparseSymMatrix::from_triplets(
            2,
            &[(0, 0, 2.0), (0, 1, -1.0), (1, 0, -1.0), (1, 1, 2.0)],
            crate::sparse::TripletMode::Strict,
        )
        .unwrap();
        let eps = [0.3, -1.2];
        let (u, stats) = s.apply(&m, &eps).unwrap();
        assert!((u[0] - 0.3).abs() < 1e-15 && (u[1] + 1.2).abs() < 1e-15);
        assert_eq!(stats.matvecs, 2);
        assert_eq!(stats.work_vectors, 4);
    }

    #[test]
    fn identity_operator_scales_by_f_of_one() {
        let f = TargetFunction::new(vec![1.0, 1.0], TargetMode::InvSqrt).unwrap();
        let s = f.chebyshev_series(Interval::new(0.0, 3.0).unwrap(), 12).unwrap();
        let id = SparseSymMatrix::identity(3).unwrap();
        let eps = [1.0, -2.0, 0.5];
        let (u, _) = s.apply(&id, &eps).unwrap();
        let f1 = s.eval(1.0);
        for (ui, e) in u.iter().zip(&eps) {
            assert!((ui - f1 * e).abs() < 1e-14);
        }
    }

    #[test]
    fn order_zero_skips_recurrence() {
        let s = ChebSeries::new(Interval::new(0.0, 1.0).unwrap(), vec![3.0]).unwrap();
        let id = SparseSymMatrix::identity(2).unwrap();
        let counted = CountingOperator::new(&id);
        let (u, stats) = s.apply(&counted, &[1.0, 2.0]).unwrap();
        assert_eq!(u, vec![1.5, 3.0]);
        assert_eq!(counted.applications(), 0);
        assert_eq!(stats.work_vectors, 1);
    }

    #[test]
    fn text_format_round_trips() {
        let f = TargetFunction::one_plus_x_pow(2, TargetMode::InvSqrt);
        let s = f.chebyshev_series(Interval::new(0.0, 7.5).unwrap(), 9).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("0e0 7.5e0 9\n"));
        assert_eq!(ChebSeries::from_text(&text).unwrap(), s);
        assert!(ChebSeries::from_text("0 1 2\n1\n2\n").is_err());
    }

    proptest! {
        #[test]
        fn diagonal_operator_matches_scalar_eval(
            diag in prop::collection::vec(0.0f64..5.0, 1..12),
            eps_seed in prop::collection::vec(-3.0f64..3.0, 12),
            k in 0usize..30,
        ) {
            let m = SparseSymMatrix::from_diagonal(&diag).unwrap();
            let iv = m.gershgorin_interval(true).non_degenerate();
            let f = TargetFunction::one_plus_x_pow(2, TargetMode::InvSqrt);
            let s = f.chebyshev_series(iv, k).unwrap();
            let eps = &eps_seed[..diag.len()];
            let (u, stats) = s.apply(&m, eps).unwrap();
            prop_assert_eq!(stats.matvecs, k);
            for i in 0..diag.len() {
                let want = s.eval(diag[i]) * eps[i];
                prop_assert!((u[i] - want).abs() <= 1e-12 * (1.0 + want.abs()));
            }
        }
    }
}
