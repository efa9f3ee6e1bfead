use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::scalar::Scalar;
use crate::precision::PrecisionCtx;

/// Outcome of a one-dimensional Newton solve.
#[derive(Debug, Clone)]
pub struct Newton1dResult<T> {
    pub root: T,
    pub iterations: u32,
    /// `|f(root)|` at the final iterate.
    pub residual: Float,
    /// Magnitude of the last Newton step taken.
    pub last_step: Float,
    /// The iteration reached the evaluation noise floor instead of the
    /// requested tolerance (only with [`NewtonOptions::accept_stagnation`]).
    pub stagnated: bool,
}

/// Behavioral switches for the Newton drivers.
#[derive(Debug, Clone, Copy, Default)]
pub struct NewtonOptions {
    /// Treat persistent tiny steps as convergence to the evaluation noise
    /// floor rather than a failure. Determinant-valued functions cannot be
    /// evaluated below their cancellation floor, so the strict step
    /// tolerance may be unreachable even though the root is as accurate as
    /// the data allows.
    pub accept_stagnation: bool,
}

/// Outcome of a two-dimensional Newton solve on a pair of equations.
#[derive(Debug, Clone)]
pub struct Newton2dResult<T> {
    pub x: T,
    pub y: T,
    pub iterations: u32,
    /// Absolute component residuals `(|F1|, |F2|)` at the solution.
    pub residuals: (Float, Float),
    /// Component magnitudes at the seed, used as damping scales.
    pub scales: (Float, Float),
    pub last_step: Float,
    /// The iteration reached the evaluation noise floor instead of the
    /// requested tolerance (only with [`NewtonOptions::accept_stagnation`]).
    pub stagnated: bool,
}

impl<T> Newton2dResult<T> {
    /// Residuals relative to the component magnitudes at the seed — the
    /// meaningful smallness measure when the two equations live on wildly
    /// different scales.
    pub fn residuals_relative(&self) -> (Float, Float) {
        (
            self.residuals.0.clone() / &self.scales.0,
            self.residuals.1.clone() / &self.scales.1,
        )
    }
}

/// Newton-Raphson root of `f` from `x0`, real or complex.
///
/// The derivative is used analytically when supplied; otherwise it is
/// approximated by the central difference with step `10^-(digits/2)`.
/// Convergence requires the relative Newton step to fall below `ctx.tol`,
/// after which one polishing iteration is taken so both the step and the
/// residual (relative to the local derivative scale) end up below tolerance.
///
/// When a full step does not reduce `|f|`, it is halved up to 20 times and
/// the best trial is kept; exceptional-point basins can be narrow enough to
/// need this.
pub fn newton_1d<T, F>(
    f: F,
    derivative: Option<&dyn Fn(&T) -> Result<T>>,
    x0: &T,
    ctx: &PrecisionCtx,
) -> Result<Newton1dResult<T>>
where
    T: Scalar,
    F: Fn(&T) -> Result<T>,
{
    newton_1d_with(f, derivative, x0, ctx, NewtonOptions::default())
}

/// [`newton_1d`] with explicit [`NewtonOptions`].
pub fn newton_1d_with<T, F>(
    f: F,
    derivative: Option<&dyn Fn(&T) -> Result<T>>,
    x0: &T,
    ctx: &PrecisionCtx,
    options: NewtonOptions,
) -> Result<Newton1dResult<T>>
where
    T: Scalar,
    F: Fn(&T) -> Result<T>,
{
    let prec = ctx.prec_bits();
    let h = T::from_real(ctx.fd_step());
    let two_h = h.clone() + &h;
    let df = |x: &T| -> Result<T> {
        match derivative {
            Some(d) => d(x),
            None => {
                let hi = f(&(x.clone() + &h))?;
                let lo = f(&(x.clone() - &h))?;
                Ok((hi - &lo) / &two_h)
            }
        }
    };

    let mut x = x0.clone();
    let mut fx = f(&x)?;
    let mut polish = false;
    let huge = ctx.pow10(i64::from(ctx.digits()));
    let small = ctx.pow10(-6);
    let mut best_step: Option<Float> = None;
    let mut stall = 0u32;

    for iter in 1..=ctx.max_newton_iters() {
        let slope = df(&x)?;
        let step = fx.clone() / &slope;
        let step_mag = step.magnitude();
        let x_scale = {
            let m = x.magnitude();
            if m < 1f64 {
                Float::with_val(prec, 1)
            } else {
                m
            }
        };
        if !step.is_finite_val() || step_mag > huge.clone() * &x_scale {
            return Err(Error::SingularDerivative {
                at: format!("{x}"),
                magnitude: format!("{}", slope.magnitude()),
            });
        }

        // damped update: halve until |f| does not increase (cap 20). Steps
        // already below 1e-6 of scale are exempt — there the residual sits
        // near the evaluation floor and jitters, which is not a basin
        // problem.
        let mut trial = x.clone() - &step;
        let mut ftrial = f(&trial)?;
        let mut taken = step.clone();
        if step_mag > small.clone() * &x_scale {
            let fx_mag = fx.magnitude();
            let mut halvings = 0;
            while ftrial.magnitude() > fx_mag && halvings < 20 {
                taken = taken / &T::from_f64(prec, 2.0);
                trial = x.clone() - &taken;
                ftrial = f(&trial)?;
                halvings += 1;
            }
        }
        x = trial;
        fx = ftrial;

        let taken_mag = taken.magnitude();
        if taken_mag <= ctx.tol().clone() * &x_scale {
            if polish {
                return Ok(Newton1dResult {
                    root: x,
                    iterations: iter,
                    residual: fx.magnitude(),
                    last_step: taken_mag,
                    stagnated: false,
                });
            }
            polish = true;
        } else {
            polish = false;
        }
        if fx.is_zero_val() {
            // exact root at working precision: the next step would be zero
            return Ok(Newton1dResult {
                root: x,
                iterations: iter,
                residual: Float::new(prec),
                last_step: Float::new(prec),
                stagnated: false,
            });
        }

        // noise-floor detection: sub-1e-6 steps that have stopped shrinking
        if options.accept_stagnation {
            let improving = best_step
                .as_ref()
                .map_or(true, |b| taken_mag < b.clone() * 0.7f64);
            if improving {
                best_step = Some(taken_mag.clone());
                stall = 0;
            } else if taken_mag <= small.clone() * &x_scale {
                stall += 1;
                if stall >= 5 {
                    return Ok(Newton1dResult {
                        root: x,
                        iterations: iter,
                        residual: fx.magnitude(),
                        last_step: taken_mag,
                        stagnated: true,
                    });
                }
            }
        }
    }

    Err(Error::ConvergenceFailure {
        iterations: ctx.max_newton_iters(),
        last: format!("{x}"),
        trace: vec![format!("|f| = {}", fx.magnitude())],
    })
}

/// Newton-Raphson on a pair of equations in two unknowns.
///
/// The Jacobian is supplied analytically (row-major `[[dF1/dx, dF1/dy],
/// [dF2/dx, dF2/dy]]`) or approximated by central differences of the pair.
/// Residual components are tracked relative to their initial magnitudes so
/// wildly different scales (a determinant and its derivative) damp sensibly.
pub fn newton_2d<T, F>(
    system: F,
    jacobian: Option<&dyn Fn(&T, &T) -> Result<[[T; 2]; 2]>>,
    seed: (&T, &T),
    ctx: &PrecisionCtx,
) -> Result<Newton2dResult<T>>
where
    T: Scalar,
    F: Fn(&T, &T) -> Result<(T, T)>,
{
    newton_2d_with(system, jacobian, seed, ctx, NewtonOptions::default())
}

/// [`newton_2d`] with explicit [`NewtonOptions`].
pub fn newton_2d_with<T, F>(
    system: F,
    jacobian: Option<&dyn Fn(&T, &T) -> Result<[[T; 2]; 2]>>,
    seed: (&T, &T),
    ctx: &PrecisionCtx,
    options: NewtonOptions,
) -> Result<Newton2dResult<T>>
where
    T: Scalar,
    F: Fn(&T, &T) -> Result<(T, T)>,
{
    let prec = ctx.prec_bits();
    let h = T::from_real(ctx.fd_step());
    let two_h = h.clone() + &h;

    let jac = |x: &T, y: &T| -> Result<[[T; 2]; 2]> {
        match jacobian {
            Some(j) => j(x, y),
            None => {
                let (f1px, f2px) = system(&(x.clone() + &h), y)?;
                let (f1mx, f2mx) = system(&(x.clone() - &h), y)?;
                let (f1py, f2py) = system(x, &(y.clone() + &h))?;
                let (f1my, f2my) = system(x, &(y.clone() - &h))?;
                Ok([
                    [(f1px - &f1mx) / &two_h, (f1py - &f1my) / &two_h],
                    [(f2px - &f2mx) / &two_h, (f2py - &f2my) / &two_h],
                ])
            }
        }
    };

    let (mut x, mut y) = (seed.0.clone(), seed.1.clone());
    let (mut f1, mut f2) = system(&x, &y)?;

    // component scales frozen at the seed; floor keeps zero components sane
    let floor = ctx.pow10(-i64::from(ctx.digits()));
    let scale1 = f1.magnitude().max(&floor);
    let scale2 = f2.magnitude().max(&floor);
    let res_norm = |a: &T, b: &T| -> Float {
        let na = a.magnitude() / &scale1;
        let nb = b.magnitude() / &scale2;
        na + nb
    };

    let mut polish = false;
    let small = ctx.pow10(-6);
    let mut best_step: Option<Float> = None;
    let mut stall = 0u32;
    for iter in 1..=ctx.max_newton_iters() {
        let j = jac(&x, &y)?;
        let det = j[0][0].clone() * &j[1][1] - j[0][1].clone() * &j[1][0];
        let norm_row1 = j[0][0].magnitude() + j[0][1].magnitude();
        let norm_row2 = j[1][0].magnitude() + j[1][1].magnitude();
        let det_floor = ctx.pow10(-i64::from(ctx.digits())) * norm_row1 * norm_row2;
        if det.magnitude() <= det_floor || !det.is_finite_val() {
            return Err(Error::SingularJacobian {
                x: format!("{x}"),
                y: format!("{y}"),
            });
        }

        // J^{-1} * (-F) by Cramer's rule
        let dx = (j[0][1].clone() * &f2 - j[1][1].clone() * &f1) / &det;
        let dy = (j[1][0].clone() * &f1 - j[0][0].clone() * &f2) / &det;

        let mut tx = x.clone() + &dx;
        let mut ty = y.clone() + &dy;
        let (mut t1, mut t2) = system(&tx, &ty)?;
        let mut step_x = dx.clone();
        let mut step_y = dy.clone();
        let macro_step = {
            let scale = x.magnitude() + y.magnitude();
            let scale = if scale < 1f64 {
                Float::with_val(prec, 1)
            } else {
                scale
            };
            dx.magnitude() + dy.magnitude() > small.clone() * scale
        };
        if macro_step {
            let current = res_norm(&f1, &f2);
            let mut halvings = 0;
            while res_norm(&t1, &t2) > current && halvings < 20 {
                step_x = step_x / &T::from_f64(prec, 2.0);
                step_y = step_y / &T::from_f64(prec, 2.0);
                tx = x.clone() + &step_x;
                ty = y.clone() + &step_y;
                let next = system(&tx, &ty)?;
                t1 = next.0;
                t2 = next.1;
                halvings += 1;
            }
        }
        x = tx;
        y = ty;
        f1 = t1;
        f2 = t2;

        let step_mag = step_x.magnitude() + step_y.magnitude();
        let pos_scale = {
            let m = x.magnitude() + y.magnitude();
            if m < 1f64 {
                Float::with_val(prec, 1)
            } else {
                m
            }
        };
        if step_mag <= ctx.tol().clone() * &pos_scale {
            if polish {
                return Ok(Newton2dResult {
                    x,
                    y,
                    iterations: iter,
                    residuals: (f1.magnitude(), f2.magnitude()),
                    scales: (scale1.clone(), scale2.clone()),
                    last_step: step_mag,
                    stagnated: false,
                });
            }
            polish = true;
        } else {
            polish = false;
        }

        if options.accept_stagnation {
            let improving = best_step
                .as_ref()
                .map_or(true, |b| step_mag < b.clone() * 0.7f64);
            if improving {
                best_step = Some(step_mag.clone());
                stall = 0;
            } else if step_mag <= small.clone() * &pos_scale {
                stall += 1;
                if stall >= 5 {
                    return Ok(Newton2dResult {
                        x,
                        y,
                        iterations: iter,
                        residuals: (f1.magnitude(), f2.magnitude()),
                        scales: (scale1.clone(), scale2.clone()),
                        last_step: step_mag,
                        stagnated: true,
                    });
                }
            }
        }
    }

    Err(Error::ConvergenceFailure {
        iterations: ctx.max_newton_iters(),
        last: format!("({x}, {y})"),
        trace: vec![
            format!("|F1| = {}", f1.magnitude()),
            format!("|F2| = {}", f2.magnitude()),
        ],
    })
}
