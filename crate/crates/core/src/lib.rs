//! Simulation of Gaussian random vectors whose precision matrix has the form
//! `Q = D·P(S)·D`, with `S` sparse symmetric positive semi-definite, `D`
//! diagonal and `P` a positive polynomial.
//!
//! The sampler applies a truncated Chebyshev expansion of `1/sqrt(P)` to white
//! noise using only sparse products with `S`. The truncation order is chosen
//! so that two-sided chi-square variance tests on any linear projection of
//! the output keep their type-I error below a prescribed level.

pub mod chebyshev;
pub mod error;
pub mod fem;
pub mod order;
pub mod precision;
pub mod simulate;
pub mod special;
pub mod validate;
pub mod sparse;

pub use chebyshev::{ChebSeries, TargetFunction, TargetMode};
pub use error::{Error, Result};
pub use fem::{AnisotropyField, MaternParams, TriMesh};
pub use precision::PrecisionOperator;
pub use simulate::{simulate, SimRequest, SimResult};
pub use sparse::{DiagonalMatrix, Interval, SparseSymMatrix, TripletMode};
