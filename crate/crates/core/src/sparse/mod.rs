//! Sparse symmetric operators.
//!
//! [`SparseSymMatrix`] stores both triangles of a symmetric matrix in
//! compressed-row form so that a product costs exactly one multiply-add per
//! stored entry with no branching on the triangle. Eigenvalue enclosures
//! ([`SparseSymMatrix::gershgorin_interval`], [`SparseSymMatrix::trace_bound`])
//! only look at the stored values and never diagonalize.

pub mod market;

use std::cell::Cell;

use crate::error::{Error, Result};

/// How [`SparseSymMatrix::from_triplets`] treats off-diagonal input.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TripletMode {
    /// Triplets describe the full matrix. After duplicates are summed the
    /// result must be exactly symmetric.
    Strict,
    /// Every off-diagonal triplet `(i, j, v)` also contributes `v` at
    /// `(j, i)`. Suited to one-triangle input and element assembly.
    Symmetrize,
}

/// Closed interval `[a, b]` enclosing a spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::NonFinite(format!("interval [{a}, {b}]")));
        }
        if a > b {
            return Err(Error::DegenerateInterval { a, b });
        }
        Ok(Interval { a, b })
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    /// Widens a zero-width interval to `[a, a + 1]` so that the affine map
    /// onto `[-1, 1]` is defined. Non-degenerate intervals are returned as is.
    pub fn non_degenerate(self) -> Self {
        if self.b > self.a {
            self
        } else {
            Interval {
                a: self.a,
                b: self.a + 1.0,
            }
        }
    }
}

/// Anything that can be applied to a vector: `y = A x`.
pub trait LinearOperator {
    fn dim(&self) -> usize;

    /// Overwrites `y` with `A x`. Both slices have length [`Self::dim`].
    fn apply(&self, x: &[f64], y: &mut [f64]);
}

/// Symmetric matrix in compressed-row storage with both triangles stored.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

impl SparseSymMatrix {
    /// Builds a canonical matrix from `(row, col, value)` triplets.
    ///
    /// Duplicates are summed in input order, so mirrored entries produced
    /// by [`TripletMode::Symmetrize`] are bit-identical. Explicit zeros are
    /// kept, which preserves the assembled sparsity pattern.
    pub fn from_triplets(
        n: usize,
        triplets: &[(usize, usize, f64)],
        mode: TripletMode,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix dimension must be >= 1".into()));
        }
        let mut entries: Vec<(usize, usize, usize, f64)> = Vec::with_capacity(2 * triplets.len());
        for (seq, &(i, j, v)) in triplets.iter().enumerate() {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { row: i, col: j, n });
            }
            if !v.is_finite() {
                return Err(Error::NonFinite(format!("triplet ({i}, {j}) = {v}")));
            }
            entries.push((i, j, seq, v));
            if mode == TripletMode::Symmetrize && i != j {
                entries.push((j, i, seq, v));
            }
        }
        entries.sort_by_key(|&(i, j, seq, _)| (i, j, seq));

        let mut row_offsets = vec![0usize; n + 1];
        let mut col_indices = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        for &(i, j, _, v) in &entries {
            if last == Some((i, j)) {
                *values.last_mut().unwrap() += v;
            } else {
                col_indices.push(j);
                values.push(v);
                row_offsets[i + 1] += 1;
                last = Some((i, j));
            }
        }
        for i in 0..n {
            row_offsets[i + 1] += row_offsets[i];
        }
        let m = SparseSymMatrix {
            n,
            row_offsets,
            col_indices,
            values,
        };
        m.check_symmetric()?;
        Ok(m)
    }

    pub fn identity(n: usize) -> Result<Self> {
        let t: Vec<_> = (0..n).map(|i| (i, i, 1.0)).collect();
        Self::from_triplets(n, &t, TripletMode::Strict)
    }

    pub fn from_diagonal(diag: &[f64]) -> Result<Self> {
        let t: Vec<_> = diag.iter().enumerate().map(|(i, &d)| (i, i, d)).collect();
        Self::from_triplets(diag.len(), &t, TripletMode::Strict)
    }

    fn check_symmetric(&self) -> Result<()> {
        for (i, j, v) in self.iter() {
            if i < j {
                let mirror = self.get(j, i);
                if mirror.to_bits() != v.to_bits() {
                    return Err(Error::Asymmetric {
                        row: i,
                        col: j,
                        value: v,
                        mirror,
                    });
                }
            } else if i > j && self.position(j, i).is_none() {
                return Err(Error::Asymmetric {
                    row: i,
                    col: j,
                    value: v,
                    mirror: 0.0,
                });
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of stored entries (both triangles).
    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let r = self.row_offsets[i]..self.row_offsets[i + 1];
        self.col_indices[r.clone()]
            .iter()
            .copied()
            .zip(self.values[r].iter().copied())
    }

    /// All stored entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    fn position(&self, i: usize, j: usize) -> Option<usize> {
        let start = self.row_offsets[i];
        let cols = &self.col_indices[start..self.row_offsets[i + 1]];
        cols.binary_search(&j).ok().map(|p| start + p)
    }

    /// Entry `(i, j)`, zero when not stored.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.position(i, j).map_or(0.0, |p| self.values[p])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Returns a copy with every value `v` at `(i, j)` replaced by `f(i, j, v)`.
    pub fn map_values(&self, mut f: impl FnMut(usize, usize, f64) -> f64) -> Result<Self> {
        let mut out = self.clone();
        for i in 0..self.n {
            for p in self.row_offsets[i]..self.row_offsets[i + 1] {
                out.values[p] = f(i, self.col_indices[p], self.values[p]);
            }
        }
        if let Some(v) = out.values.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("mapped value {v}")));
        }
        out.check_symmetric()?;
        Ok(out)
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.n];
        self.matvec_into(x, &mut y)?;
        Ok(y)
    }

    pub fn matvec_into(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: y.len(),
            });
        }
        self.spmv(x, y);
        Ok(())
    }

    #[inline]
    fn spmv(&self, x: &[f64], y: &mut [f64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let r = self.row_offsets[i]..self.row_offsets[i + 1];
            let mut acc = 0.0;
            for (&j, &v) in self.col_indices[r.clone()].iter().zip(&self.values[r]) {
                acc += v * x[j];
            }
            *yi = acc;
        }
    }

    /// Same product as [`Self::matvec_into`], additionally returning the
    /// number of multiply-adds performed.
    pub fn matvec_counted(&self, x: &[f64], y: &mut [f64]) -> Result<usize> {
        if x.len() != self.n || y.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len().min(y.len()),
            });
        }
        let mut ops = 0usize;
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for p in self.row_offsets[i]..self.row_offsets[i + 1] {
                acc += self.values[p] * x[self.col_indices[p]];
                ops += 1;
            }
            *yi = acc;
        }
        Ok(ops)
    }

    /// Gershgorin enclosure of the spectrum.
    ///
    /// With `clamp_psd` the lower end is fixed at 0 and the upper end is the
    /// largest absolute row sum, which is the interval used by the simulation
    /// pipeline for positive semi-definite operators. Otherwise the union of
    /// the discs `[S_ii - r_i, S_ii + r_i]` is returned.
    pub fn gershgorin_interval(&self, clamp_psd: bool) -> Interval {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        let mut max_abs_row = 0.0f64;
        for i in 0..self.n {
            let mut diag = 0.0;
            let mut radius = 0.0;
            for (j, v) in self.row(i) {
                if j == i {
                    diag = v;
                } else {
                    radius += v.abs();
                }
            }
            lo = lo.min(diag - radius);
            hi = hi.max(diag + radius);
            max_abs_row = max_abs_row.max(diag.abs() + radius);
        }
        if clamp_psd {
            Interval {
                a: 0.0,
                b: max_abs_row,
            }
        } else {
            Interval { a: lo, b: hi }
        }
    }

    /// `sqrt(trace(S^2))`, the Frobenius norm, which bounds every |eigenvalue|.
    pub fn trace_bound(&self) -> f64 {
        self.values.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn rayleigh_quotient(&self, x: &[f64]) -> Result<f64> {
        let sx = self.matvec(x)?;
        let xx: f64 = x.iter().map(|v| v * v).sum();
        if xx == 0.0 {
            return Err(Error::ZeroVector);
        }
        let xsx: f64 = x.iter().zip(&sx).map(|(a, b)| a * b).sum();
        Ok(xsx / xx)
    }
}

impl LinearOperator for SparseSymMatrix {
    fn dim(&self) -> usize {
        self.n
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        debug_assert_eq!(y.len(), self.n);
        self.spmv(x, y);
    }
}

/// Wraps an operator and counts how often it is applied.
pub struct CountingOperator<'a, A: LinearOperator + ?Sized> {
    inner: &'a A,
    applications: Cell<usize>,
}

impl<'a, A: LinearOperator + ?Sized> CountingOperator<'a, A> {
    pub fn new(inner: &'a A) -> Self {
        CountingOperator {
            inner,
            applications: Cell::new(0),
        }
    }

    pub fn applications(&self) -> usize {
        self.applications.get()
    }
}

impl<A: LinearOperator + ?Sized> LinearOperator for CountingOperator<'_, A> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        self.applications.set(self.applications.get() + 1);
        self.inner.apply(x, y);
    }
}

/// Invertible diagonal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalMatrix {
    entries: Vec<f64>,
}

impl DiagonalMatrix {
    /// Requires finite, nonzero entries.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidParameter("empty diagonal".into()));
        }
        for (i, &d) in entries.iter().enumerate() {
            if !d.is_finite() {
                return Err(Error::NonFinite(format!("diagonal entry {i} = {d}")));
            }
            if d == 0.0 {
                return Err(Error::InvalidParameter(format!("diagonal entry {i} is zero")));
            }
        }
        Ok(DiagonalMatrix { entries })
    }

    /// Requires strictly positive entries.
    pub fn positive(entries: Vec<f64>) -> Result<Self> {
        if let Some((i, d)) = entries.iter().enumerate().find(|(_, d)| !(**d > 0.0)) {
            return Err(Error::InvalidParameter(format!(
                "diagonal entry {i} = {d} is not strictly positive"
            )));
        }
        Self::new(entries)
    }

    pub fn identity(n: usize) -> Self {
        DiagonalMatrix {
            entries: vec![1.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// `max_i |1 / d_i|`.
    pub fn inverse_max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|d| 1.0 / d.abs())
            .fold(0.0, f64::max)
    }

    /// `x ← D⁻¹ x`.
    pub fn solve_in_place(&self, x: &mut [f64]) {
        for (xi, d) in x.iter_mut().zip(&self.entries) {
            *xi /= d;
        }
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().sum()
    }
}
