//! Special functions: log-gamma, regularized incomplete gamma, chi-square
//! distribution and modified Bessel functions of the second kind.

use std::f64::consts::PI;

use crate::error::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const MAX_ITER: usize = 100_000;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Natural log of |Γ(x)|.
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        (PI / (PI * x).sin()).abs().ln() - ln_gamma(1.0 - x)
    } else {
        let x = x - 1.0;
        let t = x + LANCZOS_G + 0.5;
        let mut acc = LANCZOS[0];
        for (i, c) in LANCZOS.iter().enumerate().skip(1) {
            acc += c / (x + i as f64);
        }
        LN_SQRT_2PI + (x + 0.5) * t.ln() - t + acc.ln()
    }
}

pub fn gamma(x: f64) -> f64 {
    if x > 0.0 && x == x.floor() && x <= 171.0 {
        return (1..x as u64).map(|k| k as f64).product();
    }
    let sign = if x < 0.0 && (x.floor() as i64) % 2 != 0 { -1.0 } else { 1.0 };
    sign * ln_gamma(x).exp()
}

/// `ln Γ(a+1) − (a+½) ln a + a − ln √(2π)`, the error of Stirling's formula.
fn stirling_error(a: f64) -> f64 {
    if a > 15.0 {
        let a2 = a * a;
        (1.0 / 12.0
            - (1.0 / 360.0 - (1.0 / 1260.0 - (1.0 / 1680.0 - 1.0 / (1188.0 * a2)) / a2) / a2) / a2)
            / a
    } else {
        ln_gamma(a + 1.0) - (a + 0.5) * a.ln() + a - LN_SQRT_2PI
    }
}

/// `a ln(a/x) + x − a` without cancellation when `a ≈ x`.
fn deviance_term(a: f64, x: f64) -> f64 {
    if (a - x).abs() < 0.1 * (a + x) {
        let v = (a - x) / (a + x);
        let mut s = (a - x) * v;
        let mut ej = 2.0 * a * v;
        let v2 = v * v;
        for j in 1..1000 {
            ej *= v2;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
        }
        s
    } else {
        a * (a / x).ln() + x - a
    }
}

/// `e^{-x} x^a / Γ(a+1)` evaluated in a cancellation-free form.
fn poisson_weight(a: f64, x: f64) -> f64 {
    if x == 0.0 {
        return if a == 0.0 { 1.0 } else { 0.0 };
    }
    (-stirling_error(a) - deviance_term(a, x)).exp() / (2.0 * PI * a).sqrt()
}

/// Regularized incomplete gamma pair `(P(a, x), Q(a, x))`.
///
/// Series for `x < a + 1`, continued fraction (modified Lentz) otherwise.
pub fn gamma_pq(a: f64, x: f64) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::InvalidParameter(format!("gamma shape {a} must be positive")));
    }
    if x.is_nan() {
        return Err(Error::NonFinite("incomplete gamma argument".into()));
    }
    if x <= 0.0 {
        return Ok((0.0, 1.0));
    }
    if x.is_infinite() {
        return Ok((1.0, 0.0));
    }
    let weight = poisson_weight(a, x);
    if x < a + 1.0 {
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut denom = a;
        for _ in 0..MAX_ITER {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if term < sum * 1e-17 {
                let p = weight * sum;
                return Ok((p, 1.0 - p));
            }
        }
        Err(Error::NoRoot(format!("incomplete gamma series failed for a={a}, x={x}")))
    } else {
        const TINY: f64 = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / TINY;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..MAX_ITER {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < TINY {
                d = TINY;
            }
            c = b + an / c;
            if c.abs() < TINY {
                c = TINY;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-16 {
                let q = a * weight * h;
                return Ok((1.0 - q, q));
            }
        }
        Err(Error::NoRoot(format!(
            "incomplete gamma continued fraction failed for a={a}, x={x}"
        )))
    }
}

/// Chi-square CDF with `dof` degrees of freedom.
pub fn chisq_cdf(x: f64, dof: usize) -> f64 {
    assert!(dof >= 1, "chi-square needs at least one degree of freedom");
    if x <= 0.0 {
        return 0.0;
    }
    gamma_pq(dof as f64 / 2.0, x / 2.0).map(|(p, _)| p).unwrap_or(f64::NAN)
}

/// Upper tail `1 − F(x)`, accurate when the CDF is close to one.
pub fn chisq_sf(x: f64, dof: usize) -> f64 {
    assert!(dof >= 1, "chi-square needs at least one degree of freedom");
    if x <= 0.0 {
        return 1.0;
    }
    gamma_pq(dof as f64 / 2.0, x / 2.0).map(|(_, q)| q).unwrap_or(f64::NAN)
}

/// Inverse chi-square CDF by bracketed bisection.
pub fn chisq_quantile(p: f64, dof: usize) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!("probability {p} outside (0, 1)")));
    }
    if dof == 0 {
        return Err(Error::InvalidParameter("chi-square needs dof >= 1".into()));
    }
    let k = dof as f64;
    let mut lo = 0.0;
    let mut hi = k.max(1.0);
    while chisq_cdf(hi, dof) < p {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::NoRoot(format!("chi-square quantile {p} unbounded")));
        }
    }
    // Bisect until the bracket collapses to adjacent floats.
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if chisq_cdf(mid, dof) < p {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn bessel_i0_i1_series(x: f64) -> (f64, f64) {
    let q = 0.25 * x * x;
    let mut t0 = 1.0;
    let mut t1 = 0.5 * x;
    let (mut i0, mut i1) = (t0, t1);
    for k in 1..200 {
        let kf = k as f64;
        t0 *= q / (kf * kf);
        t1 *= q / (kf * (kf + 1.0));
        i0 += t0;
        i1 += t1;
        if t0 < 1e-18 * i0 && t1 < 1e-18 * i1 {
            break;
        }
    }
    (i0, i1)
}

/// K0 and K1 by their ascending series, used for `x <= 2`.
fn bessel_k01_series(x: f64) -> (f64, f64) {
    let (i0, i1) = bessel_i0_i1_series(x);
    let log_half = (0.5 * x).ln();
    let q = 0.25 * x * x;

    // K0 = -(ln(x/2) + γ) I0 + Σ_{k≥1} q^k/(k!)² H_k
    let mut term = 1.0;
    let mut harmonic = 0.0;
    let mut s0 = 0.0;
    // K1 tail: Σ_{k≥0} (ψ(k+1) + ψ(k+2)) q^k / (k!(k+1)!)
    let mut term1 = 1.0;
    let mut s1 = (-EULER_GAMMA) + (1.0 - EULER_GAMMA);
    for k in 1..200 {
        let kf = k as f64;
        term *= q / (kf * kf);
        harmonic += 1.0 / kf;
        s0 += term * harmonic;
        term1 *= q / (kf * (kf + 1.0));
        let psi_sum = (harmonic - EULER_GAMMA) + (harmonic + 1.0 / (kf + 1.0) - EULER_GAMMA);
        s1 += term1 * psi_sum;
        if term * harmonic < 1e-18 * s0.abs().max(1e-300) && term1 < 1e-18 {
            break;
        }
    }
    let k0 = -(log_half + EULER_GAMMA) * i0 + s0;
    let k1 = 1.0 / x + log_half * i1 - 0.25 * x * s1;
    (k0, k1)
}

/// `K_ν(x) = ∫₀^∞ exp(−x cosh t) cosh(νt) dt` by the trapezoidal rule,
/// which converges geometrically in the step for this analytic integrand.
fn bessel_k_integral(nu: f64, x: f64) -> f64 {
    const STEP: f64 = 0.05;
    let mut sum = 0.5 * (-x).exp();
    let mut k = 1;
    loop {
        let t = k as f64 * STEP;
        let e = x * t.cosh() - nu * t;
        if e - x > 45.0 {
            break;
        }
        sum += (-x * t.cosh()).exp() * (nu * t).cosh();
        k += 1;
    }
    sum * STEP
}

/// Modified Bessel function of the second kind for integer order.
pub fn bessel_k_int(order: u32, x: f64) -> f64 {
    assert!(x > 0.0, "K_n is singular at 0");
    let (k0, k1) = if x <= 2.0 {
        bessel_k01_series(x)
    } else {
        (bessel_k_integral(0.0, x), bessel_k_integral(1.0, x))
    };
    match order {
        0 => k0,
        1 => k1,
        _ => {
            let (mut km, mut k) = (k0, k1);
            for n in 1..order {
                let next = km + 2.0 * n as f64 / x * k;
                km = k;
                k = next;
            }
            k
        }
    }
}

/// `K_{n+½}(x)` in closed form.
pub fn bessel_k_half(n: u32, x: f64) -> f64 {
    assert!(x > 0.0, "K_nu is singular at 0");
    let mut sum = 0.0;
    let mut coeff = 1.0; // (n+k)! / (k! (n-k)!)
    for k in 0..=n {
        if k > 0 {
            let kf = k as f64;
            coeff *= (n as f64 + kf) * (n as f64 - kf + 1.0) / kf;
        }
        sum += coeff / (2.0 * x).powi(k as i32);
    }
    (PI / (2.0 * x)).sqrt() * (-x).exp() * sum
}

/// Smoothness classes for which `K_ν` is available.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    Integer(u32),
    /// `n + ½`
    HalfInteger(u32),
}

impl BesselOrder {
    pub fn classify(nu: f64) -> Result<Self> {
        if !(nu >= 0.0) || !nu.is_finite() {
            return Err(Error::UnsupportedSmoothness(nu));
        }
        let twice = 2.0 * nu;
        if (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::UnsupportedSmoothness(nu));
        }
        let twice = twice.round() as u32;
        Ok(if twice % 2 == 0 {
            BesselOrder::Integer(twice / 2)
        } else {
            BesselOrder::HalfInteger(twice / 2)
        })
    }

    pub fn eval(self, x: f64) -> f64 {
        match self {
            BesselOrder::Integer(n) => bessel_k_int(n, x),
            BesselOrder::HalfInteger(n) => bessel_k_half(n, x),
        }
    }
}
