//! Model definition: the harmonic oscillator with a Gaussian well,
//!
//! ```text
//! H = -(1/2) d^2/dx^2 + (1/2) x^2 - lambda exp(-x^2)
//! ```
//!
//! in the basis of unit-frequency oscillator eigenfunctions with standard
//! Hermite normalization (no variational scale parameter). The potential is
//! parity invariant, so everything downstream works in a single parity
//! sector at a time.
//!
//! Provides the closed-form Gaussian matrix elements, the Taylor
//! coefficients of `Q(x) = x^2 - 2 lambda exp(-x^2) - 2E` used by the
//! Riccati recursion, the second-order perturbation polynomials for the two
//! lowest states, and the Hellmann-Feynman consistency residual.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{Polynomial, Scalar};
use crate::precision::PrecisionCtx;

/// Symmetry species of a state. Even states carry the parity symbol `s = 0`,
/// odd states `s = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// The parity symbol `s` entering the logarithmic derivative
    /// `f(x) = s/x - psi'/psi`.
    pub fn symbol(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Sector of a global quantum number.
    pub fn of_state(n: usize) -> Parity {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// One parity sector of the oscillator basis, truncated to `size` functions.
///
/// The even sector spans the H_0 eigenstates n = 0, 2, ..., 2(size-1); the
/// odd sector n = 1, 3, ..., 2 size - 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParityBasis {
    parity: Parity,
    size: usize,
}

impl ParityBasis {
    pub fn new(parity: Parity, size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::invalid("parity basis needs at least one function"));
        }
        Ok(ParityBasis { parity, size })
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Global quantum number of the sector-local index `i`.
    pub fn quantum_number(&self, i: usize) -> usize {
        2 * i + self.parity.symbol() as usize
    }

    /// Sector and sector-local index of a global quantum number.
    pub fn locate(n: usize) -> (Parity, usize) {
        (Parity::of_state(n), n / 2)
    }
}

/// Coupling constant of the Gaussian term. Dimensionless; must be finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelParams<T> {
    lambda: T,
}

impl<T: Scalar> ModelParams<T> {
    pub fn new(lambda: T) -> Result<Self> {
        if !lambda.is_finite_val() {
            return Err(Error::invalid("coupling constant must be finite"));
        }
        Ok(ModelParams { lambda })
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }
}

/// `<m| H_0 |n>` in the eigenbasis of H_0: `(n + 1/2)` on the diagonal,
/// exactly zero elsewhere.
pub fn h0_matrix_element(m: usize, n: usize, ctx: &PrecisionCtx) -> Float {
    if m == n {
        Float::with_val(ctx.prec_bits(), n as u32) + 0.5f64
    } else {
        ctx.float_zero()
    }
}

/// `<m| exp(-x^2) |n>` in the unit-frequency oscillator basis.
///
/// Closed form from the Hermite generating function: with both indices of
/// the same parity and `c` running over `{m mod 2, m mod 2 + 2, ...,
/// min(m, n)}`,
///
/// ```text
/// <m|e^{-x^2}|n> = sqrt(m! n!) / sqrt(2)
///     * sum_c (-1)^{(m+n)/2 - c} 2^{c-(m+n)} / ( ((m-c)/2)! ((n-c)/2)! c! )
/// ```
///
/// Opposite-parity elements vanish identically and return exact zero. The
/// sum is evaluated with 64 guard bits and rounded to the working precision;
/// the result is symmetric in `(m, n)` by construction.
pub fn gaussian_matrix_element(m: usize, n: usize, ctx: &PrecisionCtx) -> Float {
    let fac = factorials(m.max(n), ctx.prec_bits() + 64);
    gaussian_element_with_table(&fac, m, n, ctx.prec_bits())
}

/// Same element against a precomputed factorial table (at 64 guard bits over
/// the output precision); lets matrix assembly amortize the table.
pub(crate) fn gaussian_element_with_table(
    fac: &[Float],
    m: usize,
    n: usize,
    out_prec: u32,
) -> Float {
    if (m + n) % 2 == 1 {
        return Float::new(out_prec);
    }
    let prec = fac[0].prec();
    let mut sum = Float::new(prec);
    let mut c = m % 2;
    while c <= m.min(n) {
        let mut term = Float::with_val(prec, 1);
        term >>= ((m + n) - c) as u32; // 2^{c-(m+n)}
        term /= &fac[(m - c) / 2];
        term /= &fac[(n - c) / 2];
        term /= &fac[c];
        if ((m + n) / 2 - c) % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        c += 2;
    }

    let norm = Float::with_val(prec, &fac[m] * &fac[n]).sqrt()
        / Float::with_val(prec, 2).sqrt();
    Float::with_val(out_prec, sum * norm)
}

pub(crate) fn factorials(up_to: usize, prec: u32) -> Vec<Float> {
    let mut fac = Vec::with_capacity(up_to + 1);
    fac.push(Float::with_val(prec, 1));
    for k in 1..=up_to {
        let next = Float::with_val(prec, &fac[k - 1] * Float::with_val(prec, k as u64));
        fac.push(next);
    }
    fac
}

/// Taylor coefficients `Q_k` of `Q(x) = x^2 - 2 lambda e^{-x^2} - 2E` in
/// powers of `x^{2k}`, for `k = 0..=k_max`:
///
/// ```text
/// Q_0 = -2E - 2 lambda,   Q_1 = 1 + 2 lambda,   Q_k = -2 lambda (-1)^k / k!
/// ```
///
/// This is the `Q` of the Schroedinger form `psi'' = Q(x) psi` consumed by
/// the Riccati recursion; it works for real or complex `(E, lambda)`.
pub fn potential_series_coeffs<T: Scalar>(
    energy: &T,
    lambda: &T,
    k_max: usize,
    ctx: &PrecisionCtx,
) -> Vec<T> {
    let prec = ctx.prec_bits();
    let two = T::from_f64(prec, 2.0);
    let mut q = Vec::with_capacity(k_max + 1);
    q.push(-(energy.clone() * &two) - &(lambda.clone() * &two));
    if k_max >= 1 {
        q.push(T::one(prec) + &(lambda.clone() * &two));
    }
    let mut k_factorial = Float::with_val(prec, 1);
    for k in 2..=k_max {
        k_factorial *= Float::with_val(prec, k as u64);
        // -2 (-1)^k / k!
        let mut coeff = Float::with_val(prec, if k % 2 == 0 { -2.0 } else { 2.0 });
        coeff /= &k_factorial;
        q.push(lambda.clone() * &T::from_real(coeff));
    }
    q
}

/// The second-order perturbation polynomials for the two lowest states,
/// with their constants (`1/sqrt(2)`, `sqrt(3)`, `ln(8 - 4 sqrt(3))`) kept
/// symbolic until evaluation at working precision:
///
/// ```text
/// E_0(lambda) = 1/2 - lambda/sqrt(2) - (ln(8 - 4 sqrt(3))/2) lambda^2
/// E_1(lambda) = 3/2 - (sqrt(2)/4) lambda
///                   - ((2 sqrt(3) - 3(1 - ln(8 - 4 sqrt(3))))/24) lambda^2
/// ```
#[derive(Debug, Clone)]
pub struct PtPolynomials {
    coeffs: [[Float; 3]; 2],
}

impl PtPolynomials {
    pub fn new(ctx: &PrecisionCtx) -> Self {
        let p = ctx.prec_bits();
        let sqrt2 = Float::with_val(p, 2).sqrt();
        let sqrt3 = Float::with_val(p, 3).sqrt();
        let log_term = (Float::with_val(p, 8) - Float::with_val(p, 4) * &sqrt3).ln();

        let e00 = Float::with_val(p, 0.5);
        let e01 = -(Float::with_val(p, 1) / &sqrt2);
        let e02 = -(log_term.clone() / 2u32);

        let e10 = Float::with_val(p, 1.5);
        let e11 = -(sqrt2.clone() / 4u32);
        let e12 = -((Float::with_val(p, 2) * &sqrt3
            - Float::with_val(p, 3) * (Float::with_val(p, 1) - &log_term))
            / 24u32);

        PtPolynomials {
            coeffs: [[e00, e01, e02], [e10, e11, e12]],
        }
    }

    /// `E_{n,j}` for `n` in {0, 1}, `j` in {0, 1, 2}.
    pub fn coeff(&self, n: usize, j: usize) -> &Float {
        &self.coeffs[n][j]
    }

    pub fn polynomial(&self, n: usize) -> Result<Polynomial<Float>> {
        Self::check_state(n)?;
        Ok(Polynomial::new(
            self.coeffs[n].to_vec(),
            self.coeffs[n][0].prec(),
        ))
    }

    pub fn energy(&self, n: usize, lambda: &Float) -> Result<Float> {
        Self::check_state(n)?;
        let [c0, c1, c2] = &self.coeffs[n];
        let prec = c0.prec();
        Ok(Float::with_val(
            prec,
            c0 + Float::with_val(prec, c1 * lambda)
                + Float::with_val(prec, lambda.clone().square() * c2),
        ))
    }

    /// Positive root of the quadratic: the perturbative estimate of the
    /// critical coupling where `E_n` crosses zero.
    pub fn critical_lambda(&self, n: usize) -> Result<Float> {
        Self::check_state(n)?;
        let [c, b, a] = &self.coeffs[n];
        let prec = a.prec();
        let disc = (Float::with_val(prec, b.clone().square())
            - Float::with_val(prec, 4) * a * c)
            .sqrt();
        // a < 0, c > 0: the (-b - sqrt)/2a branch is the positive root
        Ok(Float::with_val(prec, (-b.clone() - disc) / (2u32 * a.clone())))
    }

    fn check_state(n: usize) -> Result<()> {
        if n > 1 {
            return Err(Error::invalid(format!(
                "perturbation polynomials exist for n = 0, 1 only, got {n}"
            )));
        }
        Ok(())
    }
}

/// Second-order perturbation energy `E_n^PT(lambda)` for `n` in {0, 1}.
pub fn pt_energy(n: usize, lambda: &Float, ctx: &PrecisionCtx) -> Result<Float> {
    PtPolynomials::new(ctx).energy(n, lambda)
}

/// Eigenvalue oracle consumed by [`hft_residual`]: maps `(n, lambda)` to the
/// eigenvalue `E_n(lambda)` and the normalized eigenvector in the parity
/// sector of `n` (sector-local coefficients).
pub type EigenOracle<'a> = dyn Fn(usize, &Float) -> Result<(Float, Vec<Float>)> + 'a;

/// Hellmann-Feynman residual
///
/// ```text
/// | (E_n(lambda+h) - E_n(lambda-h)) / 2h  +  <psi_n| e^{-x^2} |psi_n> |
/// ```
///
/// The theorem gives `dE/dlambda = -<e^{-x^2}>`, so the residual measures
/// the mutual consistency of the eigenvalue curve and the eigenvector. The
/// expectation value is assembled from [`gaussian_matrix_element`] over the
/// sector basis of `n`; the eigenvector is renormalized here.
pub fn hft_residual(
    n: usize,
    lambda: &Float,
    h: &Float,
    solver: &EigenOracle,
    ctx: &PrecisionCtx,
) -> Result<Float> {
    if !(h.is_finite() && h.is_sign_positive() && !h.is_zero()) {
        return Err(Error::invalid("finite-difference step must be positive"));
    }
    let prec = ctx.prec_bits();
    let lam_plus = Float::with_val(prec, lambda + h);
    let lam_minus = Float::with_val(prec, lambda - h);
    let (e_plus, _) = solver(n, &lam_plus)?;
    let (e_minus, _) = solver(n, &lam_minus)?;
    let slope = (e_plus - e_minus) / Float::with_val(prec, 2u32 * h.clone());

    let (_, vector) = solver(n, lambda)?;
    let (parity, _) = ParityBasis::locate(n);
    let basis = ParityBasis::new(parity, vector.len())?;

    let mut norm2 = Float::new(prec);
    for v in &vector {
        norm2 += Float::with_val(prec, v * v);
    }
    let mut expectation = Float::new(prec);
    for (i, vi) in vector.iter().enumerate() {
        for (j, vj) in vector.iter().enumerate() {
            let g = gaussian_matrix_element(basis.quantum_number(i), basis.quantum_number(j), ctx);
            expectation += Float::with_val(prec, vi * vj) * g;
        }
    }
    expectation /= norm2;

    Ok(Float::with_val(prec, slope + expectation).abs())
}
