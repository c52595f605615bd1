//! Choice of the Chebyshev truncation order.
//!
//! A sample of `N` simulated vectors is accepted by a two-sided chi-square
//! variance test along a direction `v` with probability depending only on the
//! ratio `X = vᵀΣv / vᵀΣ_s v` of target to simulated variance. The threshold
//! `ε_{N,γ}` bounds `|X − 1|` so that the rejection probability stays below
//! `(1 + γ)α`; [`min_order`] then finds the smallest order whose relative
//! spectral error is below that threshold and [`reduce_order`] drops tail
//! coefficients whose total contribution is below a Euclidean tolerance.

use rayon::prelude::*;

use crate::chebyshev::{ChebSeries, TargetFunction};
use crate::error::{Error, Result};
use crate::sparse::Interval;
use crate::special::{chisq_cdf, chisq_quantile, chisq_sf};

/// Points of the equispaced grid used to maximize the relative error.
pub const SEARCH_GRID: usize = 10_001;
/// Resolution factor of the verification grid.
pub const VERIFY_REFINEMENT: usize = 10;

const ROOT_LO: f64 = 1e-6;
const ROOT_HI: f64 = 1e4;
const ROOT_TOL: f64 = 1e-12;

/// Sample size, significance and tolerated degradation of the variance test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestConfig {
    pub n_samples: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub eta: Option<f64>,
}

impl TestConfig {
    pub fn new(n_samples: usize, alpha: f64, gamma: f64, eta: Option<f64>) -> Result<Self> {
        if n_samples < 2 {
            return Err(Error::InvalidParameter(format!(
                "sample size {n_samples} must be at least 2"
            )));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidParameter(format!("significance {alpha} outside (0, 1)")));
        }
        if !(gamma >= 0.0) || !gamma.is_finite() {
            return Err(Error::InvalidParameter(format!("gamma {gamma} must be >= 0")));
        }
        if let Some(eta) = eta {
            if !(eta > 0.0) || !eta.is_finite() {
                return Err(Error::InvalidParameter(format!("eta {eta} must be > 0")));
            }
        }
        Ok(TestConfig {
            n_samples,
            alpha,
            gamma,
            eta,
        })
    }
}

/// Two-sided chi-square variance test with `N − 1` degrees of freedom.
#[derive(Debug, Clone, Copy)]
pub struct VarianceTestModel {
    pub dof: usize,
    pub alpha: f64,
    pub lower: f64,
    pub upper: f64,
}

impl VarianceTestModel {
    pub fn new(n_samples: usize, alpha: f64) -> Result<Self> {
        if n_samples < 2 {
            return Err(Error::InvalidParameter("variance test needs N >= 2".into()));
        }
        let dof = n_samples - 1;
        Ok(VarianceTestModel {
            dof,
            alpha,
            lower: chisq_quantile(alpha / 2.0, dof)?,
            upper: chisq_quantile(1.0 - alpha / 2.0, dof)?,
        })
    }

    /// Probability of rejecting when the true-to-simulated variance ratio is `x`.
    pub fn rejection_prob(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) {
            return Err(Error::InvalidParameter(format!("variance ratio {x} must be > 0")));
        }
        Ok(chisq_cdf(self.lower * x, self.dof) + chisq_sf(self.upper * x, self.dof))
    }
}

/// `R_α(X) = 1 − [F(χ²_{1−α/2} X) − F(χ²_{α/2} X)]`.
pub fn rejection_prob(x: f64, cfg: &TestConfig) -> Result<f64> {
    VarianceTestModel::new(cfg.n_samples, cfg.alpha)?.rejection_prob(x)
}

/// Both roots `X_lo < 1 < X_hi` of `R_α(X) = (1 + γ)α`.
pub fn rejection_roots(cfg: &TestConfig) -> Result<(f64, f64)> {
    if !(cfg.gamma > 0.0) {
        return Err(Error::InvalidParameter("epsilon threshold needs gamma > 0".into()));
    }
    let model = VarianceTestModel::new(cfg.n_samples, cfg.alpha)?;
    let target = (1.0 + cfg.gamma) * cfg.alpha;
    let excess = |x: f64| model.rejection_prob(x).map(|r| r - target);

    let lo = bisect(&excess, ROOT_LO, 1.0)?;
    let hi = bisect(&excess, 1.0, ROOT_HI)?;
    Ok((lo, hi))
}

/// `ε_{N,γ} = min(1 − X_lo, X_hi − 1)`.
pub fn epsilon_threshold(cfg: &TestConfig) -> Result<f64> {
    let (lo, hi) = rejection_roots(cfg)?;
    Ok((1.0 - lo).min(hi - 1.0))
}

fn bisect(f: &impl Fn(f64) -> Result<f64>, mut a: f64, mut b: f64) -> Result<f64> {
    let mut fa = f(a)?;
    let fb = f(b)?;
    if fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!(
            "rejection probability does not cross the target on [{a}, {b}] \
             (excess {fa:.3e} and {fb:.3e})"
        )));
    }
    while b - a > ROOT_TOL {
        let m = 0.5 * (a + b);
        let fm = f(m)?;
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Rows of the threshold tables.
pub const TABLE_GAMMAS: [f64; 7] = [0.001, 0.01, 0.05, 0.10, 0.20, 0.50, 1.00];
pub const TABLE_SAMPLE_SIZES: [usize; 6] = [50, 100, 500, 1000, 5000, 10000];

/// Resolution of the published threshold tables.
pub const TABLE_RESOLUTION: f64 = 2e-5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableCell {
    pub gamma: f64,
    pub n_samples: usize,
    pub epsilon: f64,
    /// `epsilon` on the table resolution grid, then to 3 significant figures.
    pub printed: f64,
}

/// Rounds to the nearest multiple of [`TABLE_RESOLUTION`] and keeps three
/// significant figures.
pub fn printed_epsilon(eps: f64) -> f64 {
    let snapped = (eps / TABLE_RESOLUTION).round() * TABLE_RESOLUTION;
    format!("{snapped:.2e}").parse().unwrap()
}

/// The full γ × N grid of thresholds for significance `alpha`.
pub fn epsilon_table(alpha: f64) -> Result<Vec<TableCell>> {
    let cells: Vec<(f64, usize)> = TABLE_GAMMAS
        .iter()
        .flat_map(|&g| TABLE_SAMPLE_SIZES.iter().map(move |&n| (g, n)))
        .collect();
    cells
        .into_par_iter()
        .map(|(gamma, n_samples)| {
            let cfg = TestConfig::new(n_samples, alpha, gamma, None)?;
            let epsilon = epsilon_threshold(&cfg)?;
            Ok(TableCell {
                gamma,
                n_samples,
                epsilon,
                printed: printed_epsilon(epsilon),
            })
        })
        .collect()
}

/// `|(1/P(λ) − p(λ)²) / p(λ)²|` for the approximation `p ≈ 1/sqrt(P)`.
pub fn relative_error_at(target: &TargetFunction, series: &ChebSeries, x: f64) -> f64 {
    let p = series.eval(x);
    let p2 = p * p;
    ((1.0 / target.poly(x) - p2) / p2).abs()
}

/// Maximum relative error over `points` equispaced points of `interval`.
pub fn max_relative_error(
    target: &TargetFunction,
    series: &ChebSeries,
    interval: Interval,
    points: usize,
) -> f64 {
    let points = points.max(2);
    let h = interval.width() / (points - 1) as f64;
    (0..points)
        .into_par_iter()
        .map(|i| {
            let x = if i == points - 1 { interval.b } else { interval.a + h * i as f64 };
            relative_error_at(target, series, x)
        })
        .reduce(|| 0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Smallest order `K <= k_max` whose relative error is at most `epsilon`.
///
/// The search grid has [`SEARCH_GRID`] points; the returned order is
/// re-checked on a grid [`VERIFY_REFINEMENT`] times finer and increased
/// until it passes there as well.
pub fn min_order(
    target: &TargetFunction,
    interval: Interval,
    epsilon: f64,
    k_max: usize,
) -> Result<(usize, ChebSeries)> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidParameter(format!("epsilon {epsilon} must be > 0")));
    }
    target.check_positive(interval, SEARCH_GRID)?;
    let full = target.chebyshev_series(interval, k_max)?;
    let err = |k: usize| max_relative_error(target, &full.truncated(k), interval, SEARCH_GRID);
    let passes = |k: usize| err(k) <= epsilon;

    let mut k = if passes(0) {
        0
    } else {
        let mut fail = 0;
        let mut pass = 1;
        while pass < k_max && !passes(pass) {
            fail = pass;
            pass = (2 * pass).min(k_max);
        }
        if !passes(pass) {
            return Err(Error::CriterionUnmet {
                k_max,
                achieved: err(k_max),
                target: epsilon,
            });
        }
        while pass - fail > 1 {
            let mid = fail + (pass - fail) / 2;
            if passes(mid) {
                pass = mid;
            } else {
                fail = mid;
            }
        }
        pass
    };

    let fine = SEARCH_GRID * VERIFY_REFINEMENT;
    loop {
        let achieved = max_relative_error(target, &full.truncated(k), interval, fine);
        if achieved <= epsilon {
            break;
        }
        if k == k_max {
            return Err(Error::CriterionUnmet {
                k_max,
                achieved,
                target: epsilon,
            });
        }
        k += 1;
    }
    Ok((k, full.truncated(k)))
}

/// Outcome of tail-coefficient reduction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduction {
    pub effective_order: usize,
    /// `Σ_{k=K_eff+1}^{L} |c_k|`
    pub tail_sum: f64,
    /// `η / (‖D⁻¹‖_∞ ‖ε‖)`
    pub budget: f64,
}

/// Smallest `K_eff` with `Σ_{k=K_eff+1}^{L} |c_k| <= η / (‖D⁻¹‖_∞ ‖ε‖)`.
pub fn reduce_order(series: &ChebSeries, eta: f64, norm_d_inv: f64, norm_eps: f64) -> Result<Reduction> {
    if !(eta > 0.0) {
        return Err(Error::InvalidParameter(format!("eta {eta} must be > 0")));
    }
    let budget = eta / (norm_d_inv * norm_eps);
    let c = series.coeffs();
    let mut effective_order = series.order();
    let mut tail_sum = 0.0;
    for k in (0..series.order()).rev() {
        let next = tail_sum + c[k + 1].abs();
        if next > budget {
            break;
        }
        tail_sum = next;
        effective_order = k;
    }
    Ok(Reduction {
        effective_order,
        tail_sum,
        budget,
    })
}

/// Threshold, test-based order and reduced order for one operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderDecision {
    pub epsilon: f64,
    /// `L`, the smallest order meeting the relative-error criterion.
    pub order: usize,
    /// `K_eff <= L`.
    pub effective_order: usize,
    pub tail_sum: f64,
}

impl OrderDecision {
    /// Decision for a user-imposed order.
    pub fn forced(order: usize) -> Self {
        OrderDecision {
            epsilon: f64::NAN,
            order,
            effective_order: order,
            tail_sum: 0.0,
        }
    }
}

/// Runs threshold computation, order search and (when `cfg.eta` is set)
/// reduction. Returns the decision and the series at the effective order.
pub fn select_order(
    target: &TargetFunction,
    interval: Interval,
    cfg: &TestConfig,
    norm_d_inv: f64,
    norm_eps: f64,
    k_max: usize,
) -> Result<(OrderDecision, ChebSeries)> {
    let epsilon = epsilon_threshold(cfg)?;
    let (order, series) = min_order(target, interval, epsilon, k_max)?;
    let (effective_order, tail_sum) = match cfg.eta {
        Some(eta) => {
            let r = reduce_order(&series, eta, norm_d_inv, norm_eps)?;
            (r.effective_order, r.tail_sum)
        }
        None => (order, 0.0),
    };
    let decision = OrderDecision {
        epsilon,
        order,
        effective_order,
        tail_sum,
    };
    Ok((decision, series.truncated(effective_order)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chebyshev::TargetMode;

    fn cfg(n: usize, alpha: f64, gamma: f64) -> TestConfig {
        TestConfig::new(n, alpha, gamma, None).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(TestConfig::new(1, 0.05, 0.1, None).is_err());
        assert!(TestConfig::new(10, 0.0, 0.1, None).is_err());
        assert!(TestConfig::new(10, 0.05, -0.1, None).is_err());
        assert!(TestConfig::new(10, 0.05, 0.1, Some(0.0)).is_err());
    }

    #[test]
    fn rejection_at_unit_ratio_is_alpha() {
        for &n in &[10, 50, 100, 1000] {
            let r = rejection_prob(1.0, &cfg(n, 0.05, 0.1)).unwrap();
            assert!((r - 0.05).abs() < 1e-10, "N={n}: {r}");
        }
        let far = rejection_prob(1e3, &cfg(50, 0.05, 0.1)).unwrap();
        assert!(far > 1.0 - 1e-12);
        assert!(rejection_prob(0.0, &cfg(50, 0.05, 0.1)).is_err());
    }

    #[test]
    fn published_table_cells() {
        let e = epsilon_threshold(&cfg(50, 0.05, 0.10)).unwrap();
        assert_eq!(printed_epsilon(e), 3.00e-2);
        let e = epsilon_threshold(&cfg(10000, 0.05, 0.001)).unwrap();
        assert_eq!(printed_epsilon(e), 2.40e-4);
        let e = epsilon_threshold(&cfg(100, 0.01, 0.01)).unwrap();
        assert_eq!(printed_epsilon(e), 3.24e-3);
    }

    #[test]
    fn threshold_guarantee_and_binding_root() {
        for &(n, alpha, gamma) in &[(50, 0.05, 0.1), (1000, 0.01, 0.2), (5000, 0.05, 0.01)] {
            let c = cfg(n, alpha, gamma);
            let eps = epsilon_threshold(&c).unwrap();
            let bound = (1.0 + gamma) * alpha;
            let lo = rejection_prob(1.0 - eps, &c).unwrap();
            let hi = rejection_prob(1.0 + eps, &c).unwrap();
            assert!(lo <= bound + 1e-9 && hi <= bound + 1e-9);
            assert!((lo - bound).abs() < 1e-6 || (hi - bound).abs() < 1e-6);
        }
    }

    #[test]
    fn huge_gamma_has_no_root() {
        let c = cfg(50, 0.5, 1.5);
        assert!(matches!(epsilon_threshold(&c), Err(Error::NoRoot(_))));
        assert!(epsilon_threshold(&cfg(50, 0.05, 0.0)).is_err());
    }

    #[test]
    fn printed_rounding() {
        assert_eq!(printed_epsilon(6.4195e-4), 6.40e-4);
        assert_eq!(printed_epsilon(3.921e-4), 4.00e-4);
        assert_eq!(printed_epsilon(0.10960), 1.10e-1);
    }

    #[test]
    fn constant_polynomial_needs_order_zero() {
        let f = TargetFunction::new(vec![4.0], TargetMode::InvSqrt).unwrap();
        let (k, s) = min_order(&f, Interval::new(0.0, 17.0).unwrap(), 1e-6, 64).unwrap();
        assert_eq!(k, 0);
        assert!((s.eval(3.0) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn unmet_criterion_is_reported() {
        let f = TargetFunction::one_plus_x_pow(2, TargetMode::InvSqrt);
        let r = min_order(&f, Interval::new(0.0, 1e4).unwrap(), 1e-10, 8);
        assert!(matches!(r, Err(Error::CriterionUnmet { k_max: 8, .. })));
    }

    #[test]
    fn reduction_examples() {
        let iv = Interval::new(0.0, 1.0).unwrap();
        let s = ChebSeries::new(iv, vec![1.0, 0.5, 0.25, 0.0, 0.0, 0.0]).unwrap();
        let r = reduce_order(&s, 1e-9, 1.0, 1.0).unwrap();
        assert_eq!(r.effective_order, 2);
        assert_eq!(r.tail_sum, 0.0);
        let r = reduce_order(&s, 10.0, 1.0, 1.0).unwrap();
        assert_eq!(r.effective_order, 0);
        assert_eq!(r.tail_sum, 0.75);
        let r = reduce_order(&s, 0.3, 1.0, 1.0).unwrap();
        assert_eq!(r.effective_order, 1);
    }
}
