#![allow(dead_code)]

use chebsim::chebyshev::{TargetFunction, TargetMode};
use chebsim::fem::TriMesh;
use chebsim::sparse::{DiagonalMatrix, SparseSymMatrix, TripletMode};
use chebsim::validate::DenseMatrix;
use chebsim::PrecisionOperator;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Weighted graph Laplacian plus a non-negative diagonal: symmetric PSD.
pub fn random_psd(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SparseSymMatrix {
    let mut diag = vec![0.0; n];
    let mut t = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random::<f64>() < density {
                let w = rng.random_range(0.1..3.0);
                t.push((i, j, -w));
                diag[i] += w;
                diag[j] += w;
            }
        }
    }
    for (i, d) in diag.iter().enumerate() {
        let shift = if rng.random::<f64>() < 0.3 { rng.random_range(0.0..2.0) } else { 0.0 };
        t.push((i, i, d + shift));
    }
    SparseSymMatrix::from_triplets(n, &t, TripletMode::Symmetrize).unwrap()
}

/// Random sparse PSD `S`, positive `D` and a polynomial positive on `[0, ∞)`.
pub fn random_operator(seed: u64, max_n: usize) -> PrecisionOperator {
    let mut r = rng(seed);
    let n = r.random_range(4..=max_n);
    let s = random_psd(&mut r, n, 3.0 / n as f64);
    let d = DiagonalMatrix::positive((0..n).map(|_| r.random_range(0.5..2.0)).collect()).unwrap();
    let p = if r.random::<bool>() {
        TargetFunction::one_plus_x_pow(r.random_range(1..=3), TargetMode::InvSqrt)
    } else {
        let deg = r.random_range(1..=3);
        let coeffs = (0..=deg).map(|_| r.random_range(0.1..2.0)).collect();
        TargetFunction::new(coeffs, TargetMode::InvSqrt).unwrap()
    };
    PrecisionOperator::new(s, d, p).unwrap()
}

/// Regular grid with every interior node moved by up to `jitter·h`.
pub fn jittered_grid(nx: usize, ny: usize, h: f64, jitter: f64, seed: u64) -> TriMesh {
    let base = chebsim::fem::grid_mesh(nx, ny, h).unwrap();
    let mut r = rng(seed);
    let nodes = base
        .nodes()
        .iter()
        .map(|p| {
            [
                p[0] + jitter * h * r.random_range(-1.0..1.0),
                p[1] + jitter * h * r.random_range(-1.0..1.0),
            ]
        })
        .collect();
    TriMesh::new(nodes, base.triangles().to_vec()).unwrap()
}

/// Stiffness `∫ ∇ψ_i · H ∇ψ_j` from hat functions obtained by solving the
/// 3×3 interpolation systems, integrated by the 3-point Gauss rule.
pub fn quadrature_stiffness(mesh: &TriMesh, tensors: Option<&[[f64; 3]]>) -> DenseMatrix {
    let n = mesh.n_nodes();
    let mut g = DenseMatrix::zeros(n);
    // Points (2/3, 1/6, 1/6) and permutations, weight 1/3 each.
    let weights = [1.0 / 3.0; 3];
    for (t, tri) in mesh.triangles().iter().enumerate() {
        let p: Vec<[f64; 2]> = tri.iter().map(|&i| mesh.nodes()[i]).collect();
        let m = [
            [1.0, p[0][0], p[0][1]],
            [1.0, p[1][0], p[1][1]],
            [1.0, p[2][0], p[2][1]],
        ];
        let det = det3(&m);
        let mut grads = [[0.0; 2]; 3];
        for (k, grad) in grads.iter_mut().enumerate() {
            let rhs: Vec<f64> = (0..3).map(|r| if r == k { 1.0 } else { 0.0 }).collect();
            let coef = |col: usize| {
                let mut mm = m;
                for r in 0..3 {
                    mm[r][col] = rhs[r];
                }
                det3(&mm) / det
            };
            *grad = [coef(1), coef(2)];
        }
        let jac = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
        let area = 0.5 * jac.abs();
        let [h11, h12, h22] = tensors.map_or([1.0, 0.0, 1.0], |ts| ts[t]);
        for a in 0..3 {
            for b in 0..3 {
                let (ga, gb) = (grads[a], grads[b]);
                let integrand = ga[0] * (h11 * gb[0] + h12 * gb[1]) + ga[1] * (h12 * gb[0] + h22 * gb[1]);
                let integral: f64 = weights.iter().map(|w| w * area * integrand).sum();
                let (i, j) = (tri[a], tri[b]);
                g.set(i, j, g.get(i, j) + integral);
            }
        }
    }
    g
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 40)
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Least-squares slope and R² of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx).powi(2)).sum();
    let syy: f64 = y.iter().map(|b| (b - my).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, sxy * sxy / (sxx * syy))
}
