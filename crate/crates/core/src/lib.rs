//! Best L¹ approximation of Bernoulli-type kernels by trigonometric
//! polynomials, with duality certificates, and the algebraic polynomial
//! construction for Lipschitz functions on `[-1, 1]` built on top of them.
//!
//! All periodic quantities use the normalized measure `dθ / 2π`:
//! `‖f‖₁ = (1/2π) ∫ |f|` and `f̂(k) = (1/2π) ∫ f(θ) e^{-ikθ} dθ`.
//!
//! Module map:
//!
//! * [`fourier_core`]: trigonometric polynomials, grid Fourier coefficients,
//!   L¹ norms with sign-change refinement, convolution.
//! * [`kernels`]: Bernoulli, quasi-Bernoulli and Steklov kernels.
//! * [`favard`]: Favard constants by three routes and related identities.
//! * [`best_l1`]: sign patterns, dual lower bounds, interpolating candidates
//!   and certificates.
//! * [`bernoulli_series`]: expansion of a kernel into Bernoulli kernels from
//!   the Laurent coefficients of its analytic coefficient tail.
//! * [`lipschitz_alg`]: the pointwise-weighted algebraic approximation
//!   pipeline and its verification harness.
//!
//! Grid sweeps run on rayon when the `parallel` feature is enabled (the
//! default). Reductions always happen in index order, so results are
//! bit-identical with and without the feature.

// Argument checks are written `!(x > 0.0)` on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bernoulli_series;
pub mod best_l1;
mod error;
mod exec;
pub mod favard;
pub mod fourier_core;
pub mod kernels;
pub mod lipschitz_alg;
mod tail;

pub use error::{Error, Result};
pub use num_complex::Complex64;
