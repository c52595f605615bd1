//! Linear-triangle finite elements for Matérn SPDE precision operators.
//!
//! With lumped mass `C` and stiffness `G`, the discretized field has precision
//! `Q = D·(I + S)^α·D` where `S = C^{-1/2} G C^{-1/2} / κ²` and
//! `D = (κ^α/τ) C^{1/2}`.

use std::fs;
use std::path::Path;

use crate::chebyshev::{TargetFunction, TargetMode};
use crate::error::{Error, Result};
use crate::precision::PrecisionOperator;
use crate::sparse::{DiagonalMatrix, SparseSymMatrix, TripletMode};
use crate::special::{gamma, BesselOrder};

const DUPLICATE_TOL: f64 = 1e-12;

/// Planar triangulation with counter-clockwise triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct TriMesh {
    nodes: Vec<[f64; 2]>,
    triangles: Vec<[usize; 3]>,
}

impl TriMesh {
    /// Validates indices, rejects zero-area triangles and coincident nodes,
    /// and reorders clockwise triangles.
    pub fn new(nodes: Vec<[f64; 2]>, mut triangles: Vec<[usize; 3]>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidParameter("mesh has no nodes".into()));
        }
        if let Some(p) = nodes.iter().find(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::NonFinite(format!("node coordinates {p:?}")));
        }
        for (t, tri) in triangles.iter_mut().enumerate() {
            if let Some(&bad) = tri.iter().find(|&&i| i >= nodes.len()) {
                return Err(Error::InvalidParameter(format!(
                    "triangle {t} references node {bad} of {}",
                    nodes.len()
                )));
            }
            let area2 = signed_area2(&nodes, tri);
            if area2 == 0.0 {
                return Err(Error::DegenerateTriangle(t));
            }
            if area2 < 0.0 {
                tri.swap(1, 2);
            }
        }
        check_duplicates(&nodes)?;
        Ok(TriMesh { nodes, triangles })
    }

    pub fn nodes(&self) -> &[[f64; 2]] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn area(&self, t: usize) -> f64 {
        0.5 * signed_area2(&self.nodes, &self.triangles[t])
    }

    pub fn total_area(&self) -> f64 {
        (0..self.triangles.len()).map(|t| self.area(t)).sum()
    }

    /// Gradients of the three hat functions on triangle `t` and its area.
    pub fn hat_gradients(&self, t: usize) -> ([[f64; 2]; 3], f64) {
        let [i, j, k] = self.triangles[t];
        let (p, q, r) = (self.nodes[i], self.nodes[j], self.nodes[k]);
        let area2 = signed_area2(&self.nodes, &self.triangles[t]);
        let g = [
            [(q[1] - r[1]) / area2, (r[0] - q[0]) / area2],
            [(r[1] - p[1]) / area2, (p[0] - r[0]) / area2],
            [(p[1] - q[1]) / area2, (q[0] - p[0]) / area2],
        ];
        (g, 0.5 * area2)
    }

    /// Plain-text mesh: `n_nodes n_triangles`, one `x y` line per node, then
    /// one line of three zero-based node indices per triangle.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = data_lines(text);
        let (ln, head) = lines.next().ok_or_else(|| Error::parse(1, "empty mesh file"))?;
        let counts = parse_fields::<usize>(head, 2, ln)?;
        let mut nodes = Vec::with_capacity(counts[0]);
        for _ in 0..counts[0] {
            let (ln, l) = lines.next().ok_or_else(|| Error::parse(ln, "missing node line"))?;
            let xy = parse_fields::<f64>(l, 2, ln)?;
            nodes.push([xy[0], xy[1]]);
        }
        let mut triangles = Vec::with_capacity(counts[1]);
        for _ in 0..counts[1] {
            let (ln, l) = lines
                .next()
                .ok_or_else(|| Error::parse(ln, "missing triangle line"))?;
            let t = parse_fields::<usize>(l, 3, ln)?;
            triangles.push([t[0], t[1], t[2]]);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(Error::parse(ln, "trailing data after triangles"));
        }
        TriMesh::new(nodes, triangles)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.nodes.len(), self.triangles.len());
        for p in &self.nodes {
            out.push_str(&format!("{:e} {:e}\n", p[0], p[1]));
        }
        for t in &self.triangles {
            out.push_str(&format!("{} {} {}\n", t[0], t[1], t[2]));
        }
        out
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

fn signed_area2(nodes: &[[f64; 2]], tri: &[usize; 3]) -> f64 {
    let (p, q, r) = (nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
    (q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1])
}

fn check_duplicates(nodes: &[[f64; 2]]) -> Result<()> {
    let mut order: Vec<usize> = (0..nodes.len()).collect();
    order.sort_by(|&a, &b| nodes[a][0].total_cmp(&nodes[b][0]));
    for (pos, &a) in order.iter().enumerate() {
        for &b in &order[pos + 1..] {
            if nodes[b][0] - nodes[a][0] > DUPLICATE_TOL {
                break;
            }
            if (nodes[b][1] - nodes[a][1]).abs() <= DUPLICATE_TOL {
                return Err(Error::InvalidParameter(format!("nodes {a} and {b} coincide")));
            }
        }
    }
    Ok(())
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<T: std::str::FromStr>(line: &str, count: usize, ln: usize) -> Result<Vec<T>> {
    let out: Vec<T> = line
        .split_whitespace()
        .map(|t| t.parse::<T>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::parse(ln, format!("cannot parse `{line}`")))?;
    if out.len() != count {
        return Err(Error::parse(ln, format!("expected {count} fields, got {}", out.len())));
    }
    Ok(out)
}

/// Regular `nx × ny` lattice with spacing `h`, every cell cut along the
/// same diagonal into two triangles. Node `(i, j)` has index `i + nx·j`.
pub fn grid_mesh(nx: usize, ny: usize, h: f64) -> Result<TriMesh> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidParameter(format!("grid {nx}x{ny} needs at least 2x2 nodes")));
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidParameter(format!("grid spacing {h} must be > 0")));
    }
    let mut nodes = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            nodes.push([i as f64 * h, j as f64 * h]);
        }
    }
    let mut triangles = Vec::with_capacity(2 * (nx - 1) * (ny - 1));
    for j in 0..ny - 1 {
        for i in 0..nx - 1 {
            let p00 = i + nx * j;
            let p10 = p00 + 1;
            let p01 = p00 + nx;
            let p11 = p01 + 1;
            triangles.push([p00, p10, p11]);
            triangles.push([p00, p11, p01]);
        }
    }
    // Lattice construction already guarantees orientation and distinct nodes.
    Ok(TriMesh { nodes, triangles })
}

/// Lumped mass: `C_ii = Σ_{T ∋ i} |T| / 3`.
pub fn assemble_mass_lumped(mesh: &TriMesh) -> Result<DiagonalMatrix> {
    let mut c = vec![0.0; mesh.n_nodes()];
    for (t, tri) in mesh.triangles().iter().enumerate() {
        let area = mesh.area(t);
        if !(area > 0.0) {
            return Err(Error::DegenerateTriangle(t));
        }
        for &i in tri {
            c[i] += area / 3.0;
        }
    }
    if let Some(i) = c.iter().position(|&v| v == 0.0) {
        return Err(Error::InvalidParameter(format!("node {i} belongs to no triangle")));
    }
    DiagonalMatrix::positive(c)
}

/// Stiffness `G_ij = ∫ ∇ψ_i · ∇ψ_j`.
pub fn assemble_stiffness(mesh: &TriMesh) -> Result<SparseSymMatrix> {
    assemble_with(mesh, |_, gi, gj| gi[0] * gj[0] + gi[1] * gj[1])
}

/// Stiffness `G_ij = ∫ ∇ψ_i · H ∇ψ_j` with `H` constant per triangle.
pub fn assemble_stiffness_aniso(mesh: &TriMesh, field: &AnisotropyField) -> Result<SparseSymMatrix> {
    if field.len() != mesh.triangles().len() {
        return Err(Error::DimensionMismatch {
            expected: mesh.triangles().len(),
            got: field.len(),
        });
    }
    assemble_with(mesh, |t, gi, gj| {
        let [h11, h12, h22] = field.tensors[t];
        let hx = h11 * gj[0] + h12 * gj[1];
        let hy = h12 * gj[0] + h22 * gj[1];
        gi[0] * hx + gi[1] * hy
    })
}

fn assemble_with(
    mesh: &TriMesh,
    form: impl Fn(usize, [f64; 2], [f64; 2]) -> f64,
) -> Result<SparseSymMatrix> {
    let mut triplets = Vec::with_capacity(6 * mesh.triangles().len());
    for (t, tri) in mesh.triangles().iter().enumerate() {
        let (g, area) = mesh.hat_gradients(t);
        if !(area > 0.0) {
            return Err(Error::DegenerateTriangle(t));
        }
        for a in 0..3 {
            for b in a..3 {
                triplets.push((tri[a], tri[b], area * form(t, g[a], g[b])));
            }
        }
    }
    SparseSymMatrix::from_triplets(mesh.n_nodes(), &triplets, TripletMode::Symmetrize)
}

/// One symmetric positive definite 2×2 tensor per triangle, stored as
/// `(h11, h12, h22)`.
#[derive(Debug, Clone, PartialEq)]
pub struct AnisotropyField {
    tensors: Vec<[f64; 3]>,
}

impl AnisotropyField {
    pub fn new(tensors: Vec<[f64; 3]>) -> Result<Self> {
        for (t, &[h11, h12, h22]) in tensors.iter().enumerate() {
            let det = h11 * h22 - h12 * h12;
            if !(h11 > 0.0) || !(det > 0.0) || !det.is_finite() {
                return Err(Error::NotPositiveDefinite(t));
            }
        }
        Ok(AnisotropyField { tensors })
    }

    pub fn constant(tensor: [f64; 3], n_triangles: usize) -> Result<Self> {
        Self::new(vec![tensor; n_triangles])
    }

    /// Tensor with principal direction at `angle` (radians), eigenvalue
    /// `major` along it and `minor` across.
    pub fn rotated(angle: f64, major: f64, minor: f64) -> [f64; 3] {
        let (s, c) = angle.sin_cos();
        [
            major * c * c + minor * s * s,
            (major - minor) * c * s,
            major * s * s + minor * c * c,
        ]
    }

    pub fn len(&self) -> usize {
        self.tensors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tensors.is_empty()
    }

    pub fn tensors(&self) -> &[[f64; 3]] {
        &self.tensors
    }

    /// One `h11 h12 h22` line per triangle.
    pub fn from_text(text: &str) -> Result<Self> {
        let tensors = data_lines(text)
            .map(|(ln, l)| parse_fields::<f64>(l, 3, ln).map(|v| [v[0], v[1], v[2]]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(tensors)
    }

    pub fn to_text(&self) -> String {
        self.tensors
            .iter()
            .map(|t| format!("{:e} {:e} {:e}\n", t[0], t[1], t[2]))
            .collect()
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

/// Matérn parameters in two dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaternParams {
    pub sigma2: f64,
    /// Scale `φ = 1/κ`.
    pub range_phi: f64,
    pub nu: f64,
}

fn range_factor(nu: f64) -> f64 {
    (12.0 * nu).sqrt()
}

/// Spatial dimension of the supported meshes.
pub const DIM: u32 = 2;

impl MaternParams {
    pub fn new(sigma2: f64, range_phi: f64, nu: f64) -> Result<Self> {
        if !(sigma2 > 0.0) || !sigma2.is_finite() {
            return Err(Error::InvalidParameter(format!("sill {sigma2} must be > 0")));
        }
        if !(range_phi > 0.0) || !range_phi.is_finite() {
            return Err(Error::InvalidParameter(format!("scale {range_phi} must be > 0")));
        }
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::InvalidParameter(format!("smoothness {nu} must be > 0")));
        }
        Ok(MaternParams { sigma2, range_phi, nu })
    }

    /// Parameters from a range in the convention `range = sqrt(12ν)·φ`.
    pub fn from_range(sigma2: f64, range: f64, nu: f64) -> Result<Self> {
        if !(nu > 0.0) {
            return Err(Error::InvalidParameter(format!("smoothness {nu} must be > 0")));
        }
        Self::new(sigma2, range / range_factor(nu), nu)
    }

    /// `sqrt(12ν)·φ`.
    pub fn range(&self) -> f64 {
        range_factor(self.nu) * self.range_phi
    }

    pub fn kappa(&self) -> f64 {
        1.0 / self.range_phi
    }

    /// SPDE exponent `α = ν + d/2`; fails unless it is a positive integer.
    pub fn alpha_spde(&self) -> Result<u32> {
        let alpha = self.nu + DIM as f64 / 2.0;
        if (alpha - alpha.round()).abs() > 1e-12 || alpha.round() < 1.0 {
            return Err(Error::InvalidParameter(format!(
                "SPDE exponent nu + d/2 = {alpha} is not a positive integer"
            )));
        }
        Ok(alpha.round() as u32)
    }

    /// `τ = σ κ^ν sqrt((4π)^{d/2} Γ(ν + d/2) / Γ(ν))`.
    pub fn tau(&self) -> f64 {
        let d_half = DIM as f64 / 2.0;
        let ratio = gamma(self.nu + d_half) / gamma(self.nu);
        self.sigma2.sqrt()
            * self.kappa().powf(self.nu)
            * ((4.0 * std::f64::consts::PI).powf(d_half) * ratio).sqrt()
    }
}

/// `(S, D, P)` for the Matérn SPDE on `mesh`, isotropic when `field` is `None`.
pub fn matern_operator(
    mesh: &TriMesh,
    params: &MaternParams,
    field: Option<&AnisotropyField>,
) -> Result<PrecisionOperator> {
    let alpha = params.alpha_spde()?;
    let c = assemble_mass_lumped(mesh)?;
    let g = match field {
        Some(f) => assemble_stiffness_aniso(mesh, f)?,
        None => assemble_stiffness(mesh)?,
    };
    let kappa2 = params.kappa() * params.kappa();
    let sqrt_c: Vec<f64> = c.entries().iter().map(|v| v.sqrt()).collect();
    let s = g.map_values(|i, j, v| v / (kappa2 * (sqrt_c[i] * sqrt_c[j])))?;
    let scale = params.kappa().powi(alpha as i32) / params.tau();
    let d = DiagonalMatrix::positive(sqrt_c.iter().map(|v| scale * v).collect())?;
    let target = TargetFunction::one_plus_x_pow(alpha, TargetMode::InvSqrt);
    PrecisionOperator::new(s, d, target)
}

/// Matérn covariance `σ²/(2^{ν−1}Γ(ν)) (h/φ)^ν K_ν(h/φ)`.
pub fn matern_covariance(h: f64, params: &MaternParams) -> Result<f64> {
    if !(h >= 0.0) {
        return Err(Error::InvalidParameter(format!("lag {h} must be >= 0")));
    }
    let order = BesselOrder::classify(params.nu)?;
    if h == 0.0 {
        return Ok(params.sigma2);
    }
    let r = h / params.range_phi;
    let norm = params.sigma2 / (2f64.powf(params.nu - 1.0) * gamma(params.nu));
    let k = order.eval(r);
    if k == 0.0 {
        return Ok(0.0);
    }
    Ok(norm * r.powf(params.nu) * k)
}

/// Semivariogram `σ² − C(h)`.
pub fn matern_variogram(h: f64, params: &MaternParams) -> Result<f64> {
    Ok(params.sigma2 - matern_covariance(h, params)?)
}
