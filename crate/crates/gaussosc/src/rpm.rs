//! Riccati-Padé engine.
//!
//! The regularized logarithmic derivative `f(x) = s/x - psi'(x)/psi(x)` of a
//! solution of `psi'' = Q(x) psi` is analytic and odd at the origin,
//! `f(x) = f_0 x + f_1 x^3 + ... + f_j x^(2j+1) + ...`. Substituting into the
//! Riccati form `f' + 2sf/x - f^2 + Q = 0` yields the recursion
//!
//! ```text
//! (2k + 1 + 2s) f_k = -Q_k + sum_{i+j=k-1} f_i f_j
//! ```
//!
//! with `Q_k` from [`potential_series_coeffs`]. Quantization comes from
//! roots of the Hankel determinants `H_D^d = |f_{i+j+d-1}|` (i, j = 1..D):
//! roots in `E` at fixed coupling approximate eigenvalues, roots in `lambda`
//! at `E = 0` approximate critical couplings, and joint roots of
//! `(H, dH/dE)` in complex `(E, lambda)` locate exceptional points.
//! Determinant sequences over increasing `D` stabilize on the exact value;
//! the digit count shared by the two largest dimensions is reported as the
//! converged precision.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{
    det, det_and_inverse, newton_1d_with, newton_2d_with, shared_decimal_digits, BigComplex,
    Matrix, NewtonOptions, Scalar,
};
use crate::oscillator::{potential_series_coeffs, Parity};
use crate::precision::PrecisionCtx;
use crate::rayleigh_ritz::ExceptionalPoint;

/// Hankel determinants cannot be evaluated below their cancellation floor,
/// so the root solvers accept floor stagnation; the trusted digit count
/// comes from the dimension ladder, not the Newton tolerance.
const FLOOR_AWARE: NewtonOptions = NewtonOptions {
    accept_stagnation: true,
};

/// Taylor coefficients of the regularized logarithmic derivative at fixed
/// `(E, lambda)`; entry `k` multiplies `x^(2k+1)`.
#[derive(Debug, Clone)]
pub struct RiccatiSeries<T> {
    parity: Parity,
    energy: T,
    lambda: T,
    coeffs: Vec<T>,
}

impl<T: Scalar> RiccatiSeries<T> {
    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn energy(&self) -> &T {
        &self.energy
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }
}

/// Hankel determinant shape: dimension `D >= 2` and displacement `d >= 0`.
/// Entry `(i, j)` of the matrix is `f_{i+j+d-1}` for `i, j = 1..D`, so
/// coefficients up to index `2D + d - 1` are required.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HankelSpec {
    dim: usize,
    displacement: usize,
}

impl HankelSpec {
    pub fn new(dim: usize, displacement: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::invalid(format!(
                "Hankel dimension must be at least 2, got {dim}"
            )));
        }
        Ok(HankelSpec { dim, displacement })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn displacement(&self) -> usize {
        self.displacement
    }

    /// Largest Riccati coefficient index entering the determinant.
    pub fn coeffs_needed(&self) -> usize {
        2 * self.dim + self.displacement - 1
    }

    fn with_dim(&self, dim: usize) -> HankelSpec {
        HankelSpec {
            dim,
            displacement: self.displacement,
        }
    }
}

/// Riccati coefficients `f_0..f_k_max` at fixed `(E, lambda)`.
pub fn riccati_coeffs<T: Scalar>(
    parity: Parity,
    energy: &T,
    lambda: &T,
    k_max: usize,
    ctx: &PrecisionCtx,
) -> RiccatiSeries<T> {
    let (coeffs, _, _) = riccati_recursion(parity, energy, lambda, k_max, ctx, false, false);
    RiccatiSeries {
        parity,
        energy: energy.clone(),
        lambda: lambda.clone(),
        coeffs,
    }
}

/// Riccati coefficients together with their derivatives with respect to `E`
/// and `lambda`, obtained by differentiating the recursion term by term.
pub fn riccati_coeffs_with_derivatives<T: Scalar>(
    parity: Parity,
    energy: &T,
    lambda: &T,
    k_max: usize,
    ctx: &PrecisionCtx,
) -> (Vec<T>, Vec<T>, Vec<T>) {
    let (f, fe, fl) = riccati_recursion(parity, energy, lambda, k_max, ctx, true, true);
    (f, fe.unwrap(), fl.unwrap())
}

#[allow(clippy::type_complexity)]
fn riccati_recursion<T: Scalar>(
    parity: Parity,
    energy: &T,
    lambda: &T,
    k_max: usize,
    ctx: &PrecisionCtx,
    want_de: bool,
    want_dl: bool,
) -> (Vec<T>, Option<Vec<T>>, Option<Vec<T>>) {
    let prec = ctx.prec_bits();
    let s = parity.symbol() as usize;
    let q = potential_series_coeffs(energy, lambda, k_max, ctx);

    let two = T::from_f64(prec, 2.0);
    let mut f: Vec<T> = Vec::with_capacity(k_max + 1);
    let mut fe: Vec<T> = Vec::new();
    let mut fl: Vec<T> = Vec::new();
    let mut k_factorial = Float::with_val(prec, 1);

    for k in 0..=k_max {
        let denom = T::from_f64(prec, (2 * k + 1 + 2 * s) as f64);

        let mut acc = -q[k].clone();
        for i in 0..k {
            acc = acc + f[i].clone() * &f[k - 1 - i];
        }
        let fk = acc / &denom;

        if want_de {
            // dQ/dE = [-2, 0, 0, ...]
            let mut acc = if k == 0 { two.clone() } else { T::zero(prec) };
            for i in 0..k {
                acc = acc + two.clone() * (fe[i].clone() * &f[k - 1 - i]);
            }
            fe.push(acc / &denom);
        }
        if want_dl {
            // dQ/dlambda = [-2, 2, -2(-1)^k/k!, ...]
            let dq = match k {
                0 => -two.clone(),
                1 => two.clone(),
                _ => {
                    let mut c = Float::with_val(prec, if k % 2 == 0 { -2.0 } else { 2.0 });
                    c /= &k_factorial;
                    T::from_real(c)
                }
            };
            let mut acc = -dq;
            for i in 0..k {
                acc = acc + two.clone() * (fl[i].clone() * &f[k - 1 - i]);
            }
            fl.push(acc / &denom);
        }

        f.push(fk);
        if k >= 1 {
            k_factorial *= Float::with_val(prec, (k + 1) as u64);
        }
    }

    (f, want_de.then_some(fe), want_dl.then_some(fl))
}

/// Precision guard: Hankel determinants above dimension 10 need at least 30
/// working digits, otherwise cancellation silently destroys the result. A
/// violation is a refusal, never a degraded answer.
fn check_precision_guard(spec: &HankelSpec, ctx: &PrecisionCtx) -> Result<()> {
    if spec.dim > 10 && ctx.digits() < 30 {
        return Err(Error::Precision {
            required: 30,
            actual: ctx.digits(),
            context: format!("Hankel determinant of dimension {}", spec.dim),
        });
    }
    Ok(())
}

/// Hankel determinant `H_D^d(E, lambda) = |f_{i+j+d-1}|` for one parity
/// sector.
pub fn hankel<T: Scalar>(
    spec: &HankelSpec,
    parity: Parity,
    energy: &T,
    lambda: &T,
    ctx: &PrecisionCtx,
) -> Result<T> {
    check_precision_guard(spec, ctx)?;
    let series = riccati_coeffs(parity, energy, lambda, spec.coeffs_needed(), ctx);
    let m = hankel_matrix(spec, series.coeffs());
    det(&m, ctx)
}

fn hankel_matrix<T: Scalar>(spec: &HankelSpec, f: &[T]) -> Matrix<T> {
    let d = spec.displacement;
    // entry (i, j) = f_{i+j+d-1} with 1-based i, j
    Matrix::from_fn(spec.dim, |i, j| f[i + j + d + 1].clone())
}

/// Hankel determinant value plus the requested analytic first derivatives.
#[derive(Debug, Clone)]
pub struct HankelEval<T> {
    pub value: T,
    pub d_energy: Option<T>,
    pub d_lambda: Option<T>,
}

/// Hankel determinant and its analytic derivatives.
///
/// A derivative is the row-replacement sum
/// `dH = sum_r det(H with row r swapped for the derivative row)`; it is
/// evaluated through the equivalent cofactor form `det(H) tr(H^{-1} dM)`
/// when `H` is invertible at working precision, with the explicit
/// row-replacement determinants as fallback on an exactly singular matrix.
pub fn hankel_with_gradients<T: Scalar>(
    spec: &HankelSpec,
    parity: Parity,
    energy: &T,
    lambda: &T,
    want_de: bool,
    want_dl: bool,
    ctx: &PrecisionCtx,
) -> Result<HankelEval<T>> {
    check_precision_guard(spec, ctx)?;
    let (f, fe, fl) = riccati_recursion(
        parity,
        energy,
        lambda,
        spec.coeffs_needed(),
        ctx,
        want_de,
        want_dl,
    );
    let m = hankel_matrix(spec, &f);

    if !(want_de || want_dl) {
        return Ok(HankelEval {
            value: det(&m, ctx)?,
            d_energy: None,
            d_lambda: None,
        });
    }

    let (value, inverse) = det_and_inverse(&m, ctx)?;
    let d = spec.displacement;
    let directional = |df: &[T]| -> Result<T> {
        let prec = ctx.prec_bits();
        match &inverse {
            Some(inv) => {
                let mut trace = T::zero(prec);
                for r in 0..spec.dim {
                    for c in 0..spec.dim {
                        trace = trace + inv.at(c, r).clone() * &df[r + c + d + 1];
                    }
                }
                Ok(value.clone() * &trace)
            }
            None => {
                let mut acc = T::zero(prec);
                for r in 0..spec.dim {
                    let mut replaced = m.clone();
                    let row: Vec<T> = (0..spec.dim).map(|c| df[r + c + d + 1].clone()).collect();
                    replaced.set_row(r, row);
                    acc = acc + &det(&replaced, ctx)?;
                }
                Ok(acc)
            }
        }
    };

    let d_energy = if want_de {
        Some(directional(fe.as_ref().unwrap())?)
    } else {
        None
    };
    let d_lambda = if want_dl {
        Some(directional(fl.as_ref().unwrap())?)
    } else {
        None
    };
    Ok(HankelEval {
        value,
        d_energy,
        d_lambda,
    })
}

/// Result of a ladder-refined RPM solve.
#[derive(Debug, Clone)]
pub struct RpmSolve<T> {
    /// Root at the largest Hankel dimension.
    pub value: T,
    /// `(D, root)` for every ladder rung that was run.
    pub ladder: Vec<(usize, T)>,
    /// Digits that can be trusted: the smaller of the displacement
    /// cross-check agreement at the final rung and the agreement between the
    /// two largest dimensions.
    pub converged_digits: u32,
    /// Dimension that produced `value`.
    pub source_dim: usize,
    pub displacement: usize,
    /// `|H|` at the final root (diagnostic; absolute determinant scale).
    pub final_residual: Float,
}

/// Ladder of Hankel dimensions walked up to `target`: every 5 dimensions
/// from 10. Coarser ladders demonstrably lose the physical branch — the
/// determinants carry clusters of spurious roots around each converged
/// value, and Newton only stays on the physical member when the seed comes
/// from a nearby dimension.
pub fn ladder_dims(target: usize) -> Vec<usize> {
    if target <= 10 {
        return vec![target];
    }
    let mut dims: Vec<usize> = (10..target).step_by(5).collect();
    dims.push(target);
    dims
}

/// Working context for a Hankel solve at dimension `dim`: at least the
/// caller's digits, at least 30, and at least `2.5 * dim` against the
/// empirical cancellation growth of these determinants. The Newton budget is
/// raised to 600 because roots of exactly terminating series (lambda = 0)
/// have multiplicity `D` and converge only linearly.
pub fn rpm_work_ctx(ctx: &PrecisionCtx, dim: usize) -> Result<PrecisionCtx> {
    let needed = (dim as f64 * 2.5).ceil() as u32;
    let digits = ctx.digits().max(30).max(needed);
    let work = ctx.with_digits(digits)?;
    let tol = work.pow10(-i64::from(digits.saturating_sub(20)));
    work.with_tol(tol)?
        .with_max_newton_iters(ctx.max_newton_iters().max(600))
}

/// Eigenvalue from the Hankel quantization condition: Newton root of
/// `H(E, .)` in `E` at fixed coupling, refined over the dimension ladder up
/// to `spec.dim()`.
///
/// The seed comes from a coarse source (RR at small basis, or the
/// perturbation polynomials); convergence to a root further than 0.5 from it
/// is reported as a lost branch.
pub fn solve_e<T: Scalar>(
    spec: &HankelSpec,
    parity: Parity,
    lambda: &T,
    e_seed: &T,
    ctx: &PrecisionCtx,
) -> Result<RpmSolve<T>> {
    ladder_solve(spec, ctx, e_seed.clone(), |rung_spec, work, seed| {
        let lam = promote(lambda, work.prec_bits());
        let out = newton_1d_with(
            |e: &T| Ok(hankel_with_gradients(rung_spec, parity, e, &lam, false, false, work)?.value),
            Some(&|e: &T| {
                Ok(
                    hankel_with_gradients(rung_spec, parity, e, &lam, true, false, work)?
                        .d_energy
                        .unwrap(),
                )
            }),
            seed,
            work,
            FLOOR_AWARE,
        )?;
        let drift = (out.root.clone() - e_seed).magnitude();
        if drift > 0.5f64 {
            return Err(Error::BranchLoss(format!(
                "energy root drifted to {} from seed {e_seed} (distance {drift})",
                out.root
            )));
        }
        Ok((out.root, out.residual))
    })
}

/// Critical coupling from the Hankel condition at `E = 0`: Newton root of
/// `H(0, .)` in `lambda`, ladder-refined. Seeds come from the perturbative
/// estimates (0.684 and 3.35) or from a Rayleigh-Ritz ladder; a root that
/// leaves the physical branch (`lambda <= 0`) or drifts more than 0.5 from
/// the seed is rejected.
pub fn solve_critical_lambda(
    spec: &HankelSpec,
    parity: Parity,
    lambda_seed: &Float,
    ctx: &PrecisionCtx,
) -> Result<RpmSolve<Float>> {
    ladder_solve(spec, ctx, lambda_seed.clone(), |rung_spec, work, seed| {
        let zero = Float::new(work.prec_bits());
        let out = newton_1d_with(
            |lam: &Float| {
                Ok(hankel_with_gradients(rung_spec, parity, &zero, lam, false, false, work)?.value)
            },
            Some(&|lam: &Float| {
                Ok(
                    hankel_with_gradients(rung_spec, parity, &zero, lam, false, true, work)?
                        .d_lambda
                        .unwrap(),
                )
            }),
            seed,
            work,
            FLOOR_AWARE,
        )?;
        if !out.root.is_sign_positive() {
            return Err(Error::BranchLoss(format!(
                "critical coupling left the physical branch: {}",
                out.root
            )));
        }
        let drift = Float::with_val(work.prec_bits(), &out.root - lambda_seed).abs();
        if drift > 0.5f64 {
            return Err(Error::BranchLoss(format!(
                "critical-coupling root drifted to {} from seed {lambda_seed}",
                out.root
            )));
        }
        Ok((out.root, out.residual))
    })
}

/// Shared ladder driver.
///
/// Each rung solves twice: once with the displacement raised by one, seeded
/// from the previous rung, then with the requested displacement, seeded from
/// that root. The two displacements have independent spurious roots but
/// share the physical one, so the pair both filters spur captures and
/// provides the per-rung accuracy estimate.
fn ladder_solve<T: Scalar>(
    spec: &HankelSpec,
    ctx: &PrecisionCtx,
    seed: T,
    solve_one: impl Fn(&HankelSpec, &PrecisionCtx, &T) -> Result<(T, Float)>,
) -> Result<RpmSolve<T>> {
    let dims = ladder_dims(spec.dim());
    let mut ladder: Vec<(usize, T)> = Vec::with_capacity(dims.len());
    let mut current = seed;
    let mut residual = Float::new(ctx.prec_bits());
    let mut cross_digits = 0u32;

    for &dim in &dims {
        let work = rpm_work_ctx(ctx, dim)?;
        let promoted = promote(&current, work.prec_bits());
        let cross_spec = HankelSpec {
            dim,
            displacement: spec.displacement() + 1,
        };
        let (cross_root, _) = solve_one(&cross_spec, &work, &promoted)?;
        let rung_spec = spec.with_dim(dim);
        let (root, res) = solve_one(&rung_spec, &work, &cross_root)?;
        cross_digits = shared_decimal_digits(&cross_root, &root);
        ladder.push((dim, root.clone()));
        current = root;
        residual = res;
    }

    let rung_digits = match ladder.len() {
        0 | 1 => cross_digits,
        n => shared_decimal_digits(&ladder[n - 2].1, &ladder[n - 1].1),
    };
    Ok(RpmSolve {
        value: current,
        ladder,
        converged_digits: cross_digits.min(rung_digits),
        source_dim: spec.dim(),
        displacement: spec.displacement(),
        final_residual: residual,
    })
}

/// Re-round a value into a (possibly wider) working precision.
fn promote<T: Scalar>(value: &T, prec: u32) -> T {
    T::one(prec) * value
}

/// Exceptional point from the joint conditions `H = 0`, `dH/dE = 0` in
/// complex `(E, lambda)`, ladder-refined up to `spec.dim()`.
///
/// The seed normally comes from
/// [`ep_seeds`](crate::rayleigh_ritz::ep_seeds); a solution drifting outside
/// twice the seed's distance to the origin of the `lambda` plane is rejected
/// as a lost branch. Residuals are relative to the determinant scales at the
/// seed.
pub fn solve_ep(
    spec: &HankelSpec,
    parity: Parity,
    seed: (&BigComplex, &BigComplex),
    ctx: &PrecisionCtx,
) -> Result<ExceptionalPoint> {
    let dims = ladder_dims(spec.dim());
    let seed_radius = seed.1.magnitude();
    let mut energy = seed.0.clone();
    let mut lambda = seed.1.clone();
    let mut residuals = (Float::new(ctx.prec_bits()), Float::new(ctx.prec_bits()));
    let mut ladder: Vec<(usize, BigComplex)> = Vec::with_capacity(dims.len());
    let mut cross_digits = 0u32;

    for &dim in &dims {
        let work = rpm_work_ctx(ctx, dim)?;
        let prec = work.prec_bits();
        let mut e0 = promote(&energy, prec);
        let mut l0 = promote(&lambda, prec);
        let mut cross_lambda: Option<BigComplex> = None;

        // displacement d+1 first as the cross-check, then the requested d
        for rung_spec in [
            HankelSpec {
                dim,
                displacement: spec.displacement() + 1,
            },
            spec.with_dim(dim),
        ] {
            let system = |e: &BigComplex, lam: &BigComplex| -> Result<(BigComplex, BigComplex)> {
                let eval = hankel_with_gradients(&rung_spec, parity, e, lam, true, false, &work)?;
                Ok((eval.value, eval.d_energy.unwrap()))
            };
            let out = newton_2d_with(system, None, (&e0, &l0), &work, FLOOR_AWARE)?;

            let drift = out.y.magnitude();
            if drift > Float::with_val(prec, 2u32 * seed_radius.clone()) {
                return Err(Error::BranchLoss(format!(
                    "exceptional point drifted to |lambda| = {drift}, seed had |lambda| = {seed_radius}"
                )));
            }
            e0 = out.x.clone();
            l0 = out.y.clone();
            residuals = out.residuals_relative();
            match cross_lambda {
                None => cross_lambda = Some(out.y.clone()),
                Some(ref c) => cross_digits = shared_decimal_digits(c, &out.y),
            }
        }
        energy = e0;
        lambda = l0;
        ladder.push((dim, lambda.clone()));
    }

    let rung_digits = match ladder.len() {
        0 | 1 => cross_digits,
        n => shared_decimal_digits(&ladder[n - 2].1, &ladder[n - 1].1),
    };
    let converged_digits = cross_digits.min(rung_digits);

    Ok(ExceptionalPoint::new(
        parity,
        branch_label_heuristic(parity, &energy),
        lambda,
        energy,
        residuals,
        spec.dim(),
        converged_digits,
    ))
}

/// Sector-local labeling of the coalescing pair: the unperturbed sector
/// levels bracketing the real part of the coalescence energy. Diagnostic
/// only — at complex coupling there is no canonical state ordering.
fn branch_label_heuristic(parity: Parity, energy: &BigComplex) -> (usize, usize) {
    let s = parity.symbol() as usize;
    let re = energy.re().to_f64();
    let mut i = 0usize;
    while (2 * (i + 1) + s) as f64 + 0.5 < re {
        i += 1;
    }
    (2 * i + s, 2 * (i + 1) + s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(digits: u32) -> PrecisionCtx {
        PrecisionCtx::new(digits).unwrap()
    }

    #[test]
    fn riccati_ground_state_terminates() {
        let ctx = ctx(40);
        // s = 0, E = 1/2, lambda = 0: f(x) = x exactly
        let series = riccati_coeffs(Parity::Even, &ctx.float(0.5), &ctx.float(0.0), 4, &ctx);
        assert_eq!(series.coeffs()[0].to_f64(), 1.0);
        for k in 1..=4 {
            assert!(series.coeffs()[k].is_zero(), "f_{k} should vanish");
        }
    }

    #[test]
    fn riccati_first_excited_terminates() {
        let ctx = ctx(40);
        // s = 1, E = 3/2, lambda = 0: psi ~ x e^{-x^2/2}, f(x) = x
        let series = riccati_coeffs(Parity::Odd, &ctx.float(1.5), &ctx.float(0.0), 3, &ctx);
        assert_eq!(series.coeffs()[0].to_f64(), 1.0);
        for k in 1..=3 {
            assert!(series.coeffs()[k].is_zero(), "f_{k} should vanish");
        }
    }

    #[test]
    fn riccati_leading_coefficient_closed_form() {
        let ctx = ctx(40);
        // f_0 = (2E + 2 lambda) / (1 + 2s)
        for (parity, denom) in [(Parity::Even, 1.0), (Parity::Odd, 3.0)] {
            let series = riccati_coeffs(parity, &ctx.float(0.7), &ctx.float(-1.3), 0, &ctx);
            let expected = (2.0 * 0.7 + 2.0 * -1.3) / denom;
            assert!((series.coeffs()[0].to_f64() - expected).abs() < 1e-30);
        }
    }

    #[test]
    fn hankel_vanishes_on_exact_eigenvalue() {
        let ctx = ctx(40);
        let spec = HankelSpec::new(2, 0).unwrap();
        let h = hankel(&spec, Parity::Even, &ctx.float(0.5), &ctx.float(0.0), &ctx).unwrap();
        assert!(h.is_zero());

        let h_off = hankel(&spec, Parity::Even, &ctx.float(0.6), &ctx.float(0.0), &ctx).unwrap();
        assert!(!h_off.is_zero());
    }

    #[test]
    fn hankel_refuses_insufficient_precision() {
        let ctx = ctx(20);
        let spec = HankelSpec::new(12, 0).unwrap();
        let out = hankel(&spec, Parity::Even, &ctx.float(0.4), &ctx.float(1.0), &ctx);
        assert!(matches!(out, Err(Error::Precision { required: 30, .. })));
    }

    #[test]
    fn hankel_spec_validation() {
        assert!(HankelSpec::new(1, 0).is_err());
        let spec = HankelSpec::new(3, 1).unwrap();
        assert_eq!(spec.coeffs_needed(), 6);
    }

    #[test]
    fn analytic_gradients_match_finite_differences() {
        let ctx = ctx(45);
        let spec = HankelSpec::new(4, 0).unwrap();
        let e = ctx.float(0.37);
        let lam = ctx.float(0.81);
        let eval = hankel_with_gradients(&spec, Parity::Even, &e, &lam, true, true, &ctx).unwrap();

        let h = ctx.pow10(-15);
        let fd = |de: &Float, dl: &Float| -> Float {
            let ep = Float::with_val(ctx.prec_bits(), &e + de);
            let lp = Float::with_val(ctx.prec_bits(), &lam + dl);
            hankel(&spec, Parity::Even, &ep, &lp, &ctx).unwrap()
        };
        let zero = ctx.float(0.0);
        let de_fd = (fd(&h, &zero) - fd(&(-h.clone()), &zero)) / (2u32 * h.clone());
        let dl_fd = (fd(&zero, &h) - fd(&zero, &(-h.clone()))) / (2u32 * h.clone());

        let de = eval.d_energy.unwrap();
        let dl = eval.d_lambda.unwrap();
        let rel_e = Float::with_val(ctx.prec_bits(), &de - &de_fd).abs() / de.clone().abs();
        let rel_l = Float::with_val(ctx.prec_bits(), &dl - &dl_fd).abs() / dl.clone().abs();
        assert!(rel_e < ctx.pow10(-12), "dH/dE mismatch: {rel_e}");
        assert!(rel_l < ctx.pow10(-12), "dH/dlambda mismatch: {rel_l}");
    }

    #[test]
    fn solve_e_unperturbed_ground_state() {
        let ctx = ctx(50);
        let spec = HankelSpec::new(6, 0).unwrap();
        let out = solve_e(&spec, Parity::Even, &ctx.float(0.0), &ctx.float(0.4), &ctx).unwrap();
        let err = (out.value.clone() - 0.5f64).abs();
        assert!(err < ctx.pow10(-20), "E = {}, err = {err}", out.value);
    }

    #[test]
    fn ladder_dims_follow_schedule() {
        assert_eq!(ladder_dims(60), vec![10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60]);
        assert_eq!(ladder_dims(6), vec![6]);
        assert_eq!(ladder_dims(23), vec![10, 15, 20, 23]);
    }
}
