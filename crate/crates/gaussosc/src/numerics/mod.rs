//! Shared numerical kernels: scalar types, dense matrices and determinants,
//! polynomials (with resultants and discriminants), and damped Newton
//! solvers.
//!
//! Everything here is a pure function of its inputs and the supplied
//! [`PrecisionCtx`](crate::PrecisionCtx); there is no ambient state, so
//! concurrent invocation is safe and identical inputs give bit-identical
//! outputs.

mod matrix;
mod newton;
mod polynomial;
mod scalar;

pub use matrix::{det, det_and_inverse, Matrix};
pub use newton::{
    newton_1d, newton_1d_with, newton_2d, newton_2d_with, Newton1dResult, Newton2dResult,
    NewtonOptions,
};
pub use polynomial::{
    char_poly, complex_roots, discriminant_in_e, discriminant_in_e_within, sylvester_resultant,
    BivariatePoly, Polynomial,
};
pub use scalar::{BigComplex, Scalar};

use rug::Float;

/// Number of leading decimal digits shared by two values (real or complex),
/// judged conservatively by the relative magnitude of their difference.
/// Equal values (at working precision) report the precision itself.
pub fn shared_decimal_digits<T: Scalar>(a: &T, b: &T) -> u32 {
    let diff = (a.clone() - b).magnitude();
    let scale = a.magnitude().max(&b.magnitude());
    if diff.is_zero() {
        // bit precision -> decimal digits
        return (f64::from(diff.prec()) / std::f64::consts::LOG2_10) as u32;
    }
    if scale.is_zero() {
        return 0;
    }
    let rel = Float::with_val(diff.prec(), diff / scale);
    let digits = -rel.log10().to_f64();
    if digits <= 0.0 {
        0
    } else {
        digits as u32
    }
}
