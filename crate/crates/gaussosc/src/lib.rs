//! High-precision spectral toolkit for the one-dimensional harmonic
//! oscillator with a Gaussian perturbation,
//!
//! ```text
//! H = -(1/2) d^2/dx^2 + (1/2) x^2 - lambda exp(-x^2)
//! ```
//!
//! Two independent solver families are implemented and cross-validated
//! against each other:
//!
//! - [`rayleigh_ritz`]: variational diagonalization in the unperturbed
//!   oscillator basis, split by parity, with monotone-from-above convergence;
//! - [`rpm`]: the Riccati-Padé method, which quantizes through roots of
//!   Hankel determinants built from the Taylor coefficients of a regularized
//!   logarithmic derivative of the wavefunction.
//!
//! On top of the eigenvalue solvers sit the quantities of interest:
//! second-order perturbation polynomials and a Hellmann-Feynman consistency
//! check ([`oscillator`]), critical couplings where an eigenvalue crosses
//! zero, and complex-plane exceptional points where two eigenvalues of the
//! same parity coalesce.
//!
//! All arithmetic runs at a caller-chosen decimal precision through
//! [`PrecisionCtx`]; see the `guide` module for a walkthrough.

pub mod error;
pub mod numerics;
pub mod oscillator;
pub mod precision;
pub mod rayleigh_ritz;
pub mod rpm;

mod guide;

#[cfg(feature = "test-oracles")]
pub mod oracles;

pub use error::{Error, Result};
pub use precision::PrecisionCtx;

pub use rug;
pub use rug::Float;
