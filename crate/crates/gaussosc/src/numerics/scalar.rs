use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::Float;

/// Arithmetic interface shared by the real (`rug::Float`) and complex
/// ([`BigComplex`]) working types. Every value carries its own binary
/// precision; operations inherit the precision of the left operand, which by
/// construction equals the governing [`PrecisionCtx`](crate::PrecisionCtx).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Neg<Output = Self>
    + Add<Self, Output = Self>
    + Sub<Self, Output = Self>
    + Mul<Self, Output = Self>
    + Div<Self, Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero(prec: u32) -> Self;
    fn one(prec: u32) -> Self;
    fn from_f64(prec: u32, value: f64) -> Self;
    /// Embed a real value (keeps its precision).
    fn from_real(re: Float) -> Self;
    fn prec_of(&self) -> u32;
    /// Modulus `|x|` as a real value at the same precision.
    fn magnitude(&self) -> Float;
    fn conjugate(&self) -> Self;
    fn real_part(&self) -> Float;
    fn is_zero_val(&self) -> bool;
    fn is_finite_val(&self) -> bool;
}

impl Scalar for Float {
    fn zero(prec: u32) -> Self {
        Float::new(prec)
    }

    fn one(prec: u32) -> Self {
        Float::with_val(prec, 1)
    }

    fn from_f64(prec: u32, value: f64) -> Self {
        Float::with_val(prec, value)
    }

    fn from_real(re: Float) -> Self {
        re
    }

    fn prec_of(&self) -> u32 {
        self.prec()
    }

    fn magnitude(&self) -> Float {
        self.clone().abs()
    }

    fn conjugate(&self) -> Self {
        self.clone()
    }

    fn real_part(&self) -> Float {
        self.clone()
    }

    fn is_zero_val(&self) -> bool {
        self.is_zero()
    }

    fn is_finite_val(&self) -> bool {
        self.is_finite()
    }
}

/// Complex number over two big floats of equal precision.
///
/// Used for couplings and energies continued into the complex plane; both
/// parts always carry the precision of the governing context.
#[derive(Debug, Clone, PartialEq)]
pub struct BigComplex {
    re: Float,
    im: Float,
}

impl BigComplex {
    pub fn new(re: Float, im: Float) -> Self {
        let prec = re.prec().max(im.prec());
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn with_val(prec: u32, re: f64, im: f64) -> Self {
        BigComplex {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn i(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::with_val(prec, 1),
        }
    }

    pub fn re(&self) -> &Float {
        &self.re
    }

    pub fn im(&self) -> &Float {
        &self.im
    }

    pub fn into_parts(self) -> (Float, Float) {
        (self.re, self.im)
    }

    /// `e^(i theta)` for real `theta`.
    pub fn unit_phase(prec: u32, theta: &Float) -> Self {
        let t = Float::with_val(prec, theta);
        let (sin, cos) = t.sin_cos(Float::new(prec));
        BigComplex { re: cos, im: sin }
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{} - {}i", self.re, self.im.clone().abs())
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl Neg for BigComplex {
    type Output = BigComplex;
    fn neg(self) -> BigComplex {
        BigComplex {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Add<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn add(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.re + &rhs.re,
            im: self.im + &rhs.im,
        }
    }
}

impl Sub<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn sub(self, rhs: &BigComplex) -> BigComplex {
        BigComplex {
            re: self.re - &rhs.re,
            im: self.im - &rhs.im,
        }
    }
}

impl Mul<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn mul(self, rhs: &BigComplex) -> BigComplex {
        let re = self.re.clone() * &rhs.re - self.im.clone() * &rhs.im;
        let im = self.re * &rhs.im + self.im * &rhs.re;
        BigComplex { re, im }
    }
}

impl Div<&BigComplex> for BigComplex {
    type Output = BigComplex;
    fn div(self, rhs: &BigComplex) -> BigComplex {
        // |rhs|^2; exponent range of MPFR makes the naive formula safe
        let denom = rhs.re.clone().square() + rhs.im.clone().square();
        let re = (self.re.clone() * &rhs.re + self.im.clone() * &rhs.im) / &denom;
        let im = (self.im * &rhs.re - self.re * &rhs.im) / &denom;
        BigComplex { re, im }
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<BigComplex> for BigComplex {
            type Output = BigComplex;
            fn $method(self, rhs: BigComplex) -> BigComplex {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Scalar for BigComplex {
    fn zero(prec: u32) -> Self {
        BigComplex {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    fn one(prec: u32) -> Self {
        BigComplex {
            re: Float::with_val(prec, 1),
            im: Float::new(prec),
        }
    }

    fn from_f64(prec: u32, value: f64) -> Self {
        BigComplex {
            re: Float::with_val(prec, value),
            im: Float::new(prec),
        }
    }

    fn from_real(re: Float) -> Self {
        let prec = re.prec();
        BigComplex {
            re,
            im: Float::new(prec),
        }
    }

    fn prec_of(&self) -> u32 {
        self.re.prec()
    }

    fn magnitude(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    fn conjugate(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    fn real_part(&self) -> Float {
        self.re.clone()
    }

    fn is_zero_val(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_finite_val(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_field_ops() {
        let prec = 128;
        let a = BigComplex::with_val(prec, 3.0, 4.0);
        let b = BigComplex::with_val(prec, 1.0, -2.0);

        let sum = a.clone() + &b;
        assert_eq!(sum.re().to_f64(), 4.0);
        assert_eq!(sum.im().to_f64(), 2.0);

        // (3+4i)(1-2i) = 3 - 6i + 4i + 8 = 11 - 2i
        let prod = a.clone() * &b;
        assert_eq!(prod.re().to_f64(), 11.0);
        assert_eq!(prod.im().to_f64(), -2.0);

        // division is the inverse of multiplication
        let back = prod / &b;
        assert!((back.re().to_f64() - 3.0).abs() < 1e-30);
        assert!((back.im().to_f64() - 4.0).abs() < 1e-30);

        assert_eq!(a.magnitude().to_f64(), 5.0);
        assert_eq!(a.conjugate().im().to_f64(), -4.0);
    }

    #[test]
    fn unit_phase_lies_on_circle() {
        let prec = 192;
        let theta = Float::with_val(prec, 2.3);
        let z = BigComplex::unit_phase(prec, &theta);
        let one = z.magnitude();
        assert!((one - 1f64).abs() < Float::with_val(prec, 1e-50));
    }
}
