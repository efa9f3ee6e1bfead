use rug::Float;

use crate::error::{Error, Result};

/// Working-precision contract shared by every big-float computation.
///
/// Precision is always caller-specified and passed by value; nothing in the
/// crate reads ambient global state. `digits` is the decimal working
/// precision, `tol` the convergence threshold in units of the quantity being
/// solved for.
#[derive(Debug, Clone)]
pub struct PrecisionCtx {
    digits: u32,
    max_newton_iters: u32,
    tol: Float,
}

/// Minimum supported working precision. Below this the default tolerance
/// `10^-(digits-10)` leaves no usable headroom over double precision.
pub const MIN_DIGITS: u32 = 12;

impl PrecisionCtx {
    /// Context with `digits` decimal digits, tolerance `10^-(digits-10)` and
    /// a Newton budget of 100 iterations.
    pub fn new(digits: u32) -> Result<Self> {
        if digits < MIN_DIGITS {
            return Err(Error::invalid(format!(
                "working precision must be at least {MIN_DIGITS} digits, got {digits}"
            )));
        }
        let bits = bits_for(digits);
        let tol = pow10(bits, 10i64 - i64::from(digits));
        Ok(PrecisionCtx {
            digits,
            max_newton_iters: 100,
            tol,
        })
    }

    /// Same context at a different working precision (tolerance re-derived).
    pub fn with_digits(&self, digits: u32) -> Result<Self> {
        let mut ctx = PrecisionCtx::new(digits)?;
        ctx.max_newton_iters = self.max_newton_iters;
        Ok(ctx)
    }

    /// Override the convergence tolerance. Rejected unless
    /// `tol >= 10^-(digits-10)`: tolerances tighter than that are not
    /// representable with headroom at this precision.
    pub fn with_tol(mut self, tol: Float) -> Result<Self> {
        let floor = pow10(self.prec_bits(), 10i64 - i64::from(self.digits));
        if !(tol.is_finite() && tol.is_sign_positive() && !tol.is_zero()) {
            return Err(Error::invalid("tolerance must be positive and finite"));
        }
        if tol < floor {
            return Err(Error::invalid(format!(
                "tolerance {tol:.3e} below representable floor 1e-{} for {} digits",
                self.digits - 10,
                self.digits
            )));
        }
        self.tol = Float::with_val(self.prec_bits(), &tol);
        Ok(self)
    }

    pub fn with_max_newton_iters(mut self, iters: u32) -> Result<Self> {
        if iters == 0 {
            return Err(Error::invalid("max_newton_iters must be positive"));
        }
        self.max_newton_iters = iters;
        Ok(self)
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn max_newton_iters(&self) -> u32 {
        self.max_newton_iters
    }

    pub fn tol(&self) -> &Float {
        &self.tol
    }

    /// Binary precision handed to MPFR: enough bits for `digits` decimal
    /// digits plus a fixed guard.
    pub fn prec_bits(&self) -> u32 {
        bits_for(self.digits)
    }

    /// A fresh zero at working precision.
    pub fn float_zero(&self) -> Float {
        Float::new(self.prec_bits())
    }

    /// Convert an `f64` into the working precision.
    pub fn float(&self, value: f64) -> Float {
        Float::with_val(self.prec_bits(), value)
    }

    /// Parse a decimal literal at working precision.
    pub fn float_from_str(&self, literal: &str) -> Result<Float> {
        let parsed = Float::parse(literal)
            .map_err(|e| Error::invalid(format!("bad float literal {literal:?}: {e}")))?;
        Ok(Float::with_val(self.prec_bits(), parsed))
    }

    /// `10^exp` at working precision.
    pub fn pow10(&self, exp: i64) -> Float {
        pow10(self.prec_bits(), exp)
    }

    /// Step for finite-difference derivatives: `10^-(digits/2)`, balancing
    /// truncation against roundoff at working precision.
    pub fn fd_step(&self) -> Float {
        self.pow10(-i64::from(self.digits / 2))
    }
}

/// Decimal digits -> MPFR bits, with 16 guard bits. Integer arithmetic so the
/// mapping is identical on every platform.
fn bits_for(digits: u32) -> u32 {
    // ceil(digits * log2(10)) with log2(10) ~= 3.3219281
    (digits as u64 * 33_219_281).div_ceil(10_000_000) as u32 + 16
}

fn pow10(prec: u32, exp: i64) -> Float {
    Float::with_val(prec, 10).pow(Float::with_val(prec, exp))
}

use rug::ops::Pow;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_tolerance_has_headroom() {
        let ctx = PrecisionCtx::new(50).unwrap();
        assert_eq!(ctx.digits(), 50);
        let expected = ctx.pow10(-40);
        assert_eq!(ctx.tol().to_f64(), expected.to_f64());
    }

    #[test]
    fn rejects_tiny_precision() {
        assert!(PrecisionCtx::new(5).is_err());
    }

    #[test]
    fn rejects_unrepresentable_tolerance() {
        let ctx = PrecisionCtx::new(30).unwrap();
        let too_tight = ctx.pow10(-25);
        assert!(ctx.clone().with_tol(too_tight).is_err());
        let fine = ctx.pow10(-15);
        assert!(ctx.with_tol(fine).is_ok());
    }

    #[test]
    fn bits_monotone_in_digits() {
        let mut last = 0;
        for d in (12..400).step_by(7) {
            let b = bits_for(d);
            assert!(b > last);
            last = b;
        }
        // 50 digits need at least 167 bits
        assert!(bits_for(50) >= 167 + 16);
    }
}
