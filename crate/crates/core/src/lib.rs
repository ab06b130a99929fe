//! Two-dimensional Coulomb gases confined to a hard-wall ellipse.
//!
//! The ellipse `E` with foci at `±1` is parametrised by `tau` in `(0, 1)`.
//! Five one-particle weights on `E` make the gas determinantal at `beta = 2`
//! with explicitly known planar orthogonal polynomials: Gegenbauer, two
//! asymmetric Jacobi families, and Chebyshev polynomials of the first and
//! third kind (the second kind is the Gegenbauer family at `a = 0`).
//!
//! The crate evaluates the finite-`N` correlation kernels, their local and
//! global large-`N` limits, `k`-point correlation functions, and a Metropolis
//! sampler for Monte Carlo cross-checks.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod convergence;
pub mod correlations;
pub mod error;
pub mod geometry;
pub mod kernels_finite;
pub mod kernels_limit;
pub mod polynomials;
pub mod quadrature;
pub mod sampler;
pub mod specialfns;

pub use error::{Error, Result};
pub use geometry::{EllipseGeometry, GasFamily, PolyFamily};
pub use kernels_finite::FiniteKernel;
pub use num_complex::Complex64;
pub use correlations::{DensityGrid, EvaluableKernel, GridSpec, Rescale};
pub use kernels_limit::LimitKernelSpec;
