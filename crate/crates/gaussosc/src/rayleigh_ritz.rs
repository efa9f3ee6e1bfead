//! Rayleigh-Ritz variational solver.
//!
//! The Hamiltonian is represented in one parity sector of the unperturbed
//! oscillator basis, `H[i][j] = h0(p(i), p(j)) - lambda <p(i)|e^{-x^2}|p(j)>`
//! with `p` the sector-local to global index map. For real coupling the
//! matrix is real symmetric and the approximate eigenvalues converge to the
//! exact ones monotonically from above as the truncation size grows. For
//! complex coupling the matrix is complex symmetric and the spectrum is
//! reached through the secular polynomial instead of a symmetric
//! eigensolver.
//!
//! On top of the eigensolver sit the zero crossings of eigenvalues in
//! `lambda` (critical couplings) and the discriminant-based seeding of
//! complex-plane eigenvalue coalescences (exceptional points), which the
//! Riccati-Padé engine then refines.

use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::{
    char_poly, complex_roots, det, discriminant_in_e_within, newton_1d, newton_2d_with, BigComplex,
    BivariatePoly, Matrix, NewtonOptions, Polynomial, Scalar,
};
use crate::oscillator::{
    factorials, gaussian_element_with_table, h0_matrix_element, ModelParams, Parity, ParityBasis,
    PtPolynomials,
};
use crate::precision::PrecisionCtx;

/// Which solver produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Rr,
    Rpm,
    Pt,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::Rr => "RR",
            Method::Rpm => "RPM",
            Method::Pt => "PT",
        }
    }
}

/// One converged (or truncation-level) spectral value.
#[derive(Debug, Clone)]
pub struct SpectralPoint {
    pub n: usize,
    pub lambda: Float,
    pub energy: Float,
    pub basis_size: usize,
    pub method: Method,
}

/// Sector Hamiltonian at fixed coupling. Entries are mirrored on assembly,
/// so the matrix is symmetric entry-for-entry, bitwise.
#[derive(Debug, Clone)]
pub struct RRMatrix<T> {
    basis: ParityBasis,
    lambda: T,
    entries: Matrix<T>,
}

impl<T: Scalar> RRMatrix<T> {
    pub fn basis(&self) -> &ParityBasis {
        &self.basis
    }

    pub fn lambda(&self) -> &T {
        &self.lambda
    }

    pub fn entries(&self) -> &Matrix<T> {
        &self.entries
    }

    /// Gershgorin interval of the (real) matrix: every eigenvalue lies in
    /// `[min_i (a_ii - r_i), max_i (a_ii + r_i)]` with `r_i` the off-diagonal
    /// row sum.
    pub fn gershgorin_bounds(&self) -> (Float, Float) {
        let n = self.entries.dim();
        let prec = self.entries.at(0, 0).prec_of();
        let mut lo: Option<Float> = None;
        let mut hi: Option<Float> = None;
        for i in 0..n {
            let mut radius = Float::new(prec);
            for j in 0..n {
                if i != j {
                    radius += self.entries.at(i, j).magnitude();
                }
            }
            let center = self.entries.at(i, i).real_part();
            let l = center.clone() - &radius;
            let h = center + radius;
            lo = Some(match lo {
                Some(v) => v.min(&l),
                None => l,
            });
            hi = Some(match hi {
                Some(v) => v.max(&h),
                None => h,
            });
        }
        (lo.unwrap(), hi.unwrap())
    }
}

/// The coupling-independent Gaussian kernel `<p(i)|e^{-x^2}|p(j)>` of a
/// sector, with the factorial table shared across entries.
pub fn gaussian_sector_matrix(basis: &ParityBasis, ctx: &PrecisionCtx) -> Matrix<Float> {
    let dim = basis.size();
    let max_q = basis.quantum_number(dim - 1);
    let fac = factorials(max_q, ctx.prec_bits() + 64);
    let mut g = Matrix::zero(dim, ctx.prec_bits());
    for i in 0..dim {
        for j in i..dim {
            let val = gaussian_element_with_table(
                &fac,
                basis.quantum_number(i),
                basis.quantum_number(j),
                ctx.prec_bits(),
            );
            *g.at_mut(i, j) = val.clone();
            *g.at_mut(j, i) = val;
        }
    }
    g
}

/// Assemble the sector Hamiltonian `H = T - lambda G` at the given coupling
/// (real or complex).
pub fn assemble<T: Scalar>(
    basis: &ParityBasis,
    params: &ModelParams<T>,
    ctx: &PrecisionCtx,
) -> Result<RRMatrix<T>> {
    let g = gaussian_sector_matrix(basis, ctx);
    Ok(assemble_from_kernel(basis, params.lambda(), &g, ctx))
}

fn assemble_from_kernel<T: Scalar>(
    basis: &ParityBasis,
    lambda: &T,
    kernel: &Matrix<Float>,
    ctx: &PrecisionCtx,
) -> RRMatrix<T> {
    let dim = basis.size();
    let mut entries = Matrix::zero(dim, ctx.prec_bits());
    for i in 0..dim {
        for j in i..dim {
            let t = h0_matrix_element(basis.quantum_number(i), basis.quantum_number(j), ctx);
            let val = T::from_real(t) - &(lambda.clone() * &T::from_real(kernel.at(i, j).clone()));
            *entries.at_mut(i, j) = val.clone();
            *entries.at_mut(j, i) = val;
        }
    }
    RRMatrix {
        basis: *basis,
        lambda: lambda.clone(),
        entries,
    }
}

/// All eigenvalues of a real symmetric matrix, ascending, with optional
/// orthonormal eigenvectors (columns of the returned matrix).
///
/// Householder tridiagonalization followed by implicit-shift QL at working
/// precision; residuals `|Hv - Ev|` come out at the rounding floor, far
/// below the `10^(-digits/2)` contract.
pub fn eigen_symmetric(
    matrix: &Matrix<Float>,
    want_vectors: bool,
    ctx: &PrecisionCtx,
) -> Result<(Vec<Float>, Option<Matrix<Float>>)> {
    if matrix.dim() == 0 {
        return Err(Error::invalid("eigensolve of a 0-dimensional matrix"));
    }
    if !matrix.is_symmetric() {
        return Err(Error::invalid(
            "real eigensolve requires an exactly symmetric matrix",
        ));
    }
    let n = matrix.dim();
    let prec = ctx.prec_bits();
    let mut z = matrix.clone();
    let mut d = vec![Float::new(prec); n];
    let mut e = vec![Float::new(prec); n];

    tred2(&mut z, &mut d, &mut e, want_vectors);
    tql2(&mut z, &mut d, &mut e, want_vectors, prec)?;

    // ascending sort, permuting vectors alongside
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
    let values: Vec<Float> = order.iter().map(|&i| d[i].clone()).collect();
    let vectors = want_vectors.then(|| {
        Matrix::from_fn(n, |r, c| z.at(r, order[c]).clone())
    });
    Ok((values, vectors))
}

/// Householder reduction to tridiagonal form (d: diagonal, e: off-diagonal),
/// accumulating the orthogonal transform in `z` when eigenvectors are
/// wanted.
fn tred2(z: &mut Matrix<Float>, d: &mut [Float], e: &mut [Float], yesvecs: bool) {
    let n = z.dim();
    let prec = d[0].prec();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = Float::new(prec);
        let mut scale = Float::new(prec);
        if l > 0 {
            for k in 0..i {
                scale += z.at(i, k).clone().abs();
            }
            if scale.is_zero() {
                e[i] = z.at(i, l).clone();
            } else {
                for k in 0..i {
                    *z.at_mut(i, k) = z.at(i, k).clone() / &scale;
                    h += z.at(i, k).clone().square();
                }
                let f = z.at(i, l).clone();
                let g = if f.is_sign_positive() {
                    -h.clone().sqrt()
                } else {
                    h.clone().sqrt()
                };
                e[i] = scale.clone() * &g;
                h -= f.clone() * &g;
                *z.at_mut(i, l) = f.clone() - &g;
                let mut fsum = Float::new(prec);
                for j in 0..i {
                    if yesvecs {
                        *z.at_mut(j, i) = z.at(i, j).clone() / &h;
                    }
                    let mut g = Float::new(prec);
                    for k in 0..=j {
                        g += z.at(j, k).clone() * z.at(i, k);
                    }
                    for k in j + 1..i {
                        g += z.at(k, j).clone() * z.at(i, k);
                    }
                    e[j] = g / &h;
                    fsum += e[j].clone() * z.at(i, j);
                }
                let hh = fsum / (h.clone() + &h);
                for j in 0..i {
                    let f = z.at(i, j).clone();
                    let gj = e[j].clone() - hh.clone() * &f;
                    e[j] = gj.clone();
                    for k in 0..=j {
                        let delta = f.clone() * &e[k] + gj.clone() * z.at(i, k);
                        *z.at_mut(j, k) = z.at(j, k).clone() - &delta;
                    }
                }
            }
        } else {
            e[i] = z.at(i, l).clone();
        }
        d[i] = h;
    }
    if yesvecs {
        d[0] = Float::new(prec);
    }
    e[0] = Float::new(prec);
    for i in 0..n {
        if yesvecs {
            if !d[i].is_zero() {
                for j in 0..i {
                    let mut g = Float::new(prec);
                    for k in 0..i {
                        g += z.at(i, k).clone() * z.at(k, j);
                    }
                    for k in 0..i {
                        let delta = g.clone() * z.at(k, i);
                        *z.at_mut(k, j) = z.at(k, j).clone() - &delta;
                    }
                }
            }
            d[i] = z.at(i, i).clone();
            *z.at_mut(i, i) = Float::with_val(prec, 1);
            for j in 0..i {
                *z.at_mut(j, i) = Float::new(prec);
                *z.at_mut(i, j) = Float::new(prec);
            }
        } else {
            d[i] = z.at(i, i).clone();
        }
    }
}

/// Implicit-shift QL iteration on the tridiagonal (d, e), rotating `z`
/// alongside when eigenvectors are wanted.
fn tql2(
    z: &mut Matrix<Float>,
    d: &mut [Float],
    e: &mut [Float],
    yesvecs: bool,
    prec: u32,
) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    let eps = Float::with_val(prec, 1) >> (prec - 8);
    for i in 1..n {
        e[i - 1] = e[i].clone();
    }
    e[n - 1] = Float::new(prec);

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = n - 1;
            for cand in l..n - 1 {
                let dd = d[cand].clone().abs() + d[cand + 1].clone().abs();
                if e[cand].clone().abs() <= eps.clone() * dd {
                    m = cand;
                    break;
                }
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 100 {
                return Err(Error::ConvergenceFailure {
                    iterations: 100,
                    last: format!("{}", d[l]),
                    trace: vec![format!("QL stuck at eigenvalue index {l}")],
                });
            }
            let mut g = (d[l + 1].clone() - &d[l]) / (Float::with_val(prec, 2) * &e[l]);
            let r = g.clone().hypot(&Float::with_val(prec, 1));
            let denom = g.clone() + r.copysign(&g);
            g = d[m].clone() - &d[l] + e[l].clone() / denom;
            let mut s = Float::with_val(prec, 1);
            let mut c = Float::with_val(prec, 1);
            let mut p = Float::new(prec);
            let mut premature = false;

            for i in (l..m).rev() {
                let mut f = s.clone() * &e[i];
                let b = c.clone() * &e[i];
                let r = f.clone().hypot(&g);
                e[i + 1] = r.clone();
                if r.is_zero() {
                    d[i + 1] -= &p;
                    e[m] = Float::new(prec);
                    premature = true;
                    break;
                }
                s = f.clone() / &r;
                c = g.clone() / &r;
                g = d[i + 1].clone() - &p;
                let rr = (d[i].clone() - &g) * &s + Float::with_val(prec, 2) * c.clone() * &b;
                p = s.clone() * &rr;
                d[i + 1] = g.clone() + &p;
                g = c.clone() * &rr - &b;
                if yesvecs {
                    for k in 0..n {
                        f = z.at(k, i + 1).clone();
                        *z.at_mut(k, i + 1) = s.clone() * z.at(k, i) + c.clone() * &f;
                        *z.at_mut(k, i) = c.clone() * z.at(k, i) - s.clone() * &f;
                    }
                }
            }
            if premature {
                continue;
            }
            d[l] -= &p;
            e[l] = g;
            e[m] = Float::new(prec);
        }
    }
    Ok(())
}

/// All eigenvalues of a real-coupling sector Hamiltonian, ascending.
pub fn eigenvalues(matrix: &RRMatrix<Float>, ctx: &PrecisionCtx) -> Result<Vec<Float>> {
    Ok(eigen_symmetric(&matrix.entries, false, ctx)?.0)
}

/// Eigenvalues and orthonormal eigenvectors (columns) of a real-coupling
/// sector Hamiltonian.
pub fn eigen_decomposition(
    matrix: &RRMatrix<Float>,
    ctx: &PrecisionCtx,
) -> Result<(Vec<Float>, Matrix<Float>)> {
    let (values, vectors) = eigen_symmetric(&matrix.entries, true, ctx)?;
    Ok((values, vectors.unwrap()))
}

/// Eigenvalue and sector eigenvector of state `n` at fixed truncation size.
pub fn eigen_state_at(
    n: usize,
    lambda: &Float,
    dim: usize,
    ctx: &PrecisionCtx,
) -> Result<(Float, Vec<Float>)> {
    let (parity, idx) = ParityBasis::locate(n);
    if idx >= dim {
        return Err(Error::invalid(format!(
            "state {n} needs a sector basis larger than {dim}"
        )));
    }
    let basis = ParityBasis::new(parity, dim)?;
    let matrix = assemble(&basis, &ModelParams::new(lambda.clone())?, ctx)?;
    let (values, vectors) = eigen_decomposition(&matrix, ctx)?;
    let column = (0..dim).map(|r| vectors.at(r, idx).clone()).collect();
    Ok((values[idx].clone(), column))
}

/// Default truncation schedule for [`converge_state`].
pub const DEFAULT_SCHEDULE: [usize; 5] = [10, 20, 40, 80, 160];

/// Refine `E_n(lambda)` over the default truncation schedule until two
/// successive sizes agree to `target_digits`.
pub fn converge_state(
    n: usize,
    lambda: &Float,
    target_digits: u32,
    ctx: &PrecisionCtx,
) -> Result<SpectralPoint> {
    converge_state_with_schedule(n, lambda, target_digits, &DEFAULT_SCHEDULE, ctx)
}

/// [`converge_state`] with an explicit schedule of truncation sizes.
///
/// Successive approximations must not increase (beyond `10^(-digits/2)`
/// rounding slack) — a violation means the working precision is exhausted
/// and is reported as a failure rather than silently accepted. Running out
/// of schedule is a convergence failure carrying the ladder so far.
pub fn converge_state_with_schedule(
    n: usize,
    lambda: &Float,
    target_digits: u32,
    schedule: &[usize],
    ctx: &PrecisionCtx,
) -> Result<SpectralPoint> {
    let (parity, idx) = ParityBasis::locate(n);
    let threshold = ctx.pow10(-i64::from(target_digits));
    let slack = ctx.pow10(-i64::from(ctx.digits() / 2));
    let mut ladder: Vec<(usize, Float)> = Vec::new();

    for &dim in schedule {
        if dim <= idx {
            continue;
        }
        let basis = ParityBasis::new(parity, dim)?;
        let matrix = assemble(&basis, &ModelParams::new(lambda.clone())?, ctx)?;
        let energy = eigenvalues(&matrix, ctx)?[idx].clone();
        if let Some((_, prev)) = ladder.last() {
            if energy.clone() - prev > slack {
                return Err(Error::ConvergenceFailure {
                    iterations: ladder.len() as u32,
                    last: energy.to_string(),
                    trace: ladder_trace(&ladder),
                });
            }
            if (energy.clone() - prev).abs() < threshold {
                return Ok(SpectralPoint {
                    n,
                    lambda: lambda.clone(),
                    energy,
                    basis_size: dim,
                    method: Method::Rr,
                });
            }
        }
        ladder.push((dim, energy));
    }

    Err(Error::ConvergenceFailure {
        iterations: ladder.len() as u32,
        last: ladder
            .last()
            .map(|(_, e)| e.to_string())
            .unwrap_or_else(|| "no rung run".into()),
        trace: ladder_trace(&ladder),
    })
}

fn ladder_trace(ladder: &[(usize, Float)]) -> Vec<String> {
    ladder
        .iter()
        .map(|(d, e)| format!("D = {d}: E = {e}"))
        .collect()
}

/// Zero crossings of `E_n^{[D]}(lambda)` over a schedule of truncation
/// sizes: for each `D` the root of `det H_D(lambda) = 0` at `E = 0`, found
/// by Newton seeded from the previous size (the first from the perturbative
/// estimate, or by bisection on the eigenvalue for states above n = 1).
///
/// The returned sequence is checked to be non-increasing, the variational
/// signature; a root escaping the physical branch (`lambda <= 0`) is a
/// branch loss.
pub fn critical_lambda_rr(
    n: usize,
    d_schedule: &[usize],
    ctx: &PrecisionCtx,
) -> Result<Vec<(usize, Float)>> {
    let (parity, idx) = ParityBasis::locate(n);
    let slack = ctx.pow10(-i64::from(ctx.digits() / 2));
    let mut out: Vec<(usize, Float)> = Vec::with_capacity(d_schedule.len());
    let mut seed: Option<Float> = None;

    for &dim in d_schedule {
        if dim <= idx {
            return Err(Error::invalid(format!(
                "schedule size {dim} cannot resolve state {n}"
            )));
        }
        let basis = ParityBasis::new(parity, dim)?;
        let kernel = gaussian_sector_matrix(&basis, ctx);
        let det_at = |lambda: &Float| -> Result<Float> {
            let m = assemble_from_kernel(&basis, lambda, &kernel, ctx);
            det(&m.entries, ctx)
        };

        let start = match &seed {
            Some(s) => s.clone(),
            None => initial_critical_seed(n, &basis, &kernel, ctx)?,
        };
        let root = newton_1d(det_at, None, &start, ctx)?.root;
        if !root.is_sign_positive() {
            return Err(Error::BranchLoss(format!(
                "critical coupling left the physical branch at D = {dim}: {root}"
            )));
        }
        if let Some((_, prev)) = out.last() {
            if root.clone() - prev > slack {
                return Err(Error::ConvergenceFailure {
                    iterations: out.len() as u32,
                    last: root.to_string(),
                    trace: ladder_trace(&out),
                });
            }
        }
        seed = Some(root.clone());
        out.push((dim, root));
    }
    Ok(out)
}

/// First Newton seed for a critical-coupling ladder: the perturbative root
/// for the two lowest states, otherwise a bisection on `E_n(lambda) = 0`.
fn initial_critical_seed(
    n: usize,
    basis: &ParityBasis,
    kernel: &Matrix<Float>,
    ctx: &PrecisionCtx,
) -> Result<Float> {
    if n <= 1 {
        return PtPolynomials::new(ctx).critical_lambda(n);
    }
    let idx = n / 2;
    let energy_at = |lambda: &Float| -> Result<Float> {
        let m = assemble_from_kernel(basis, lambda, kernel, ctx);
        Ok(eigenvalues(&m, ctx)?[idx].clone())
    };
    // expand until the eigenvalue goes negative, then bisect
    let mut lo = ctx.float(0.0);
    let mut hi = ctx.float(1.0);
    let mut tries = 0;
    while energy_at(&hi)?.is_sign_positive() {
        hi = hi * 2u32;
        tries += 1;
        if tries > 40 {
            return Err(Error::ConvergenceFailure {
                iterations: tries,
                last: hi.to_string(),
                trace: vec![format!("E_{n} never crossed zero while expanding lambda")],
            });
        }
    }
    for _ in 0..60 {
        let mid = Float::with_val(ctx.prec_bits(), &lo + &hi) / 2u32;
        if energy_at(&mid)?.is_sign_positive() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Float::with_val(ctx.prec_bits(), &lo + &hi) / 2u32)
}

/// Secular (characteristic) polynomial `F_D(E) = det(H_D - E I)` at fixed
/// coupling, monic up to the sign `(-1)^D`.
#[derive(Debug, Clone)]
pub struct SecularPolynomial<T> {
    basis: ParityBasis,
    poly: Polynomial<T>,
}

impl<T: Scalar> SecularPolynomial<T> {
    pub fn basis(&self) -> &ParityBasis {
        &self.basis
    }

    pub fn poly(&self) -> &Polynomial<T> {
        &self.poly
    }

    pub fn eval(&self, energy: &T) -> T {
        self.poly.eval(energy)
    }
}

/// Characteristic polynomial of the sector Hamiltonian by
/// Faddeev-LeVerrier at working precision.
pub fn secular_polynomial<T: Scalar>(
    basis: &ParityBasis,
    lambda: &T,
    ctx: &PrecisionCtx,
) -> Result<SecularPolynomial<T>> {
    let matrix = assemble(basis, &ModelParams::new(lambda.clone())?, ctx)?;
    let monic = char_poly(&matrix.entries, ctx)?;
    // det(H - E I) = (-1)^D det(E I - H)
    let poly = if basis.size() % 2 == 1 {
        monic.neg()
    } else {
        monic
    };
    Ok(SecularPolynomial {
        basis: *basis,
        poly,
    })
}

/// Hard cap for the symbolic-in-lambda secular polynomial; coefficient
/// growth makes larger sizes useless in practice.
pub const SYMBOLIC_DIM_CAP: usize = 16;

/// Secular polynomial with the coupling kept symbolic:
/// `F_D(E, lambda) = det(H_D(lambda) - E I)` as a bivariate polynomial with
/// real coefficients (degree `D` in `E`, degree at most `D` in `lambda`).
///
/// Reconstructed by evaluating the characteristic polynomial on `D + 1`
/// points of the unit circle in the complex `lambda`-plane and inverting the
/// DFT per `E`-coefficient.
#[derive(Debug, Clone)]
pub struct SecularBivariate {
    basis: ParityBasis,
    f: BivariatePoly,
}

impl SecularBivariate {
    pub fn basis(&self) -> &ParityBasis {
        &self.basis
    }

    pub fn f(&self) -> &BivariatePoly {
        &self.f
    }
}

pub fn secular_polynomial_symbolic(
    basis: &ParityBasis,
    ctx: &PrecisionCtx,
) -> Result<SecularBivariate> {
    let dim = basis.size();
    if dim > SYMBOLIC_DIM_CAP {
        return Err(Error::Capacity(format!(
            "symbolic secular polynomial capped at D = {SYMBOLIC_DIM_CAP}, got {dim}"
        )));
    }
    let work = ctx.with_digits(ctx.digits() + 15)?;
    let prec = work.prec_bits();
    let kernel = gaussian_sector_matrix(basis, &work);
    let samples = dim + 1;
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2f64;

    // F at D+1 unit-circle couplings
    let mut sampled: Vec<Polynomial<BigComplex>> = Vec::with_capacity(samples);
    for m in 0..samples {
        let theta = two_pi.clone() * Float::with_val(prec, m as u32)
            / Float::with_val(prec, samples as u32);
        let lambda = BigComplex::unit_phase(prec, &theta);
        let matrix = assemble_from_kernel(basis, &lambda, &kernel, &work);
        let monic = char_poly(&matrix.entries, &work)?;
        sampled.push(if dim % 2 == 1 { monic.neg() } else { monic });
    }

    // invert the DFT per E-coefficient
    let m_inv = Float::with_val(prec, 1) / Float::with_val(prec, samples as u32);
    let imag_floor = work.pow10(-i64::from(ctx.digits() / 2));
    let mut coeffs_in_e = Vec::with_capacity(dim + 1);
    for k in 0..=dim {
        let mut lambda_coeffs = Vec::with_capacity(samples);
        for j in 0..samples {
            let mut acc = BigComplex::zero(prec);
            for (m, poly) in sampled.iter().enumerate() {
                let theta = -two_pi.clone() * Float::with_val(prec, ((j * m) % samples) as u64)
                    / Float::with_val(prec, samples as u32);
                acc = acc + &(poly.coeff(k) * &BigComplex::unit_phase(prec, &theta));
            }
            let c = acc * &BigComplex::from_real(m_inv.clone());
            if c.im().clone().abs() > imag_floor.clone().max(&(c.re().clone().abs() * &imag_floor))
            {
                return Err(Error::ConvergenceFailure {
                    iterations: samples as u32,
                    last: format!("{c}"),
                    trace: vec![format!(
                        "non-real coefficient reconstructing lambda^{j} of E^{k}"
                    )],
                });
            }
            lambda_coeffs.push(Float::with_val(ctx.prec_bits(), c.re()));
        }
        let poly = Polynomial::new(lambda_coeffs, ctx.prec_bits())
            .trim_relative(&ctx.pow10(-i64::from(ctx.digits() / 2)));
        coeffs_in_e.push(poly);
    }
    Ok(SecularBivariate {
        basis: *basis,
        f: BivariatePoly::new(coeffs_in_e, ctx.prec_bits()),
    })
}

/// Rectangular search region in the complex coupling plane.
#[derive(Debug, Clone, Copy)]
pub struct SearchBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl SearchBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        if !(re_min < re_max && im_min < im_max) {
            return Err(Error::invalid(
                "search box needs re_min < re_max and im_min < im_max",
            ));
        }
        Ok(SearchBox {
            re_min,
            re_max,
            im_min,
            im_max,
        })
    }

    pub fn contains(&self, z: &BigComplex) -> bool {
        let re = z.re().to_f64();
        let im = z.im().to_f64();
        re >= self.re_min && re <= self.re_max && im >= self.im_min && im <= self.im_max
    }

    fn corner_radius(&self) -> f64 {
        let re = self.re_min.abs().max(self.re_max.abs());
        let im = self.im_min.abs().max(self.im_max.abs());
        re.hypot(im)
    }
}

/// Approximate exceptional point: a coupling where two sector eigenvalues
/// collide, paired with the double-root energy estimate and the sector-local
/// pair that coalesces (global quantum numbers).
#[derive(Debug, Clone)]
pub struct EpSeed {
    pub lambda: BigComplex,
    pub energy: BigComplex,
    pub branch: (usize, usize),
}

/// Grid resolution of the numeric discriminant scan.
const SEED_GRID: usize = 21;

/// Candidate exceptional points of a sector inside a complex-plane box.
///
/// Default numeric path: scan the box on a grid, at each coupling take the
/// roots of the secular polynomial and record the minimal root gap (zero
/// exactly at a discriminant root), then polish every local gap minimum by
/// Newton on `(F, dF/dE)` and keep the solutions that stay inside the box.
/// Duplicates within `10 * ctx.tol` merge; an empty result is not an error.
pub fn ep_seeds(
    sector: Parity,
    dim: usize,
    search_box: &SearchBox,
    ctx: &PrecisionCtx,
) -> Result<Vec<EpSeed>> {
    let work = ctx.with_digits(ctx.digits().max(35))?;
    let prec = work.prec_bits();
    let basis = ParityBasis::new(sector, dim)?;
    let kernel = gaussian_sector_matrix(&basis, &work);

    // gap landscape on the grid
    let mut gaps = vec![vec![Float::new(prec); SEED_GRID]; SEED_GRID];
    let mut root_sets: Vec<Vec<Vec<BigComplex>>> = vec![vec![Vec::new(); SEED_GRID]; SEED_GRID];
    for iy in 0..SEED_GRID {
        for ix in 0..SEED_GRID {
            let lambda = grid_point(search_box, ix, iy, prec);
            let matrix = assemble_from_kernel(&basis, &lambda, &kernel, &work);
            let poly = char_poly(&matrix.entries, &work)?;
            let roots = complex_roots(&poly, &work)?;
            gaps[iy][ix] = min_root_gap(&roots, prec);
            root_sets[iy][ix] = roots;
        }
    }

    let mut seeds: Vec<EpSeed> = Vec::new();
    for iy in 0..SEED_GRID {
        for ix in 0..SEED_GRID {
            if !is_local_minimum(&gaps, ix, iy) {
                continue;
            }
            let lambda0 = grid_point(search_box, ix, iy, prec);
            let energy0 = closest_pair_midpoint(&root_sets[iy][ix], prec);
            let Some(polished) = polish_collision(&basis, &kernel, &energy0, &lambda0, &work)
            else {
                continue;
            };
            let (energy, lambda) = polished;
            if !search_box.contains(&lambda) {
                continue;
            }
            let merge_radius = Float::with_val(
                prec,
                10u32 * ctx.tol().clone() * lambda.magnitude().max(&Float::with_val(prec, 1)),
            );
            if seeds
                .iter()
                .any(|s| (s.lambda.clone() - &lambda).magnitude() < merge_radius)
            {
                continue;
            }
            let branch = branch_from_roots(&basis, &matrix_roots(&basis, &kernel, &lambda, &work)?);
            seeds.push(EpSeed {
                lambda,
                energy,
                branch,
            });
        }
    }

    seeds.sort_by(|a, b| {
        let ka = (a.lambda.magnitude().to_f64(), a.lambda.re().to_f64());
        let kb = (b.lambda.magnitude().to_f64(), b.lambda.re().to_f64());
        ka.partial_cmp(&kb).unwrap()
    });
    Ok(seeds)
}

/// Discriminant-based seeding for small bases: the symbolic-in-lambda
/// secular polynomial, its discriminant in `E`, and the discriminant roots
/// inside the box. Capped at [`SYMBOLIC_DIM_CAP`].
pub fn ep_seeds_discriminant(
    sector: Parity,
    dim: usize,
    search_box: &SearchBox,
    ctx: &PrecisionCtx,
) -> Result<Vec<EpSeed>> {
    let work = ctx.with_digits(ctx.digits().max(35))?;
    let prec = work.prec_bits();
    let basis = ParityBasis::new(sector, dim)?;
    let secular = secular_polynomial_symbolic(&basis, &work)?;
    let radius = search_box.corner_radius() + 1.0;
    let disc = discriminant_in_e_within(secular.f(), radius, &work)?;
    if disc.degree().map_or(true, |d| d == 0) {
        return Ok(Vec::new());
    }
    let roots = complex_roots(&disc.lift_complex(), &work)?;
    let kernel = gaussian_sector_matrix(&basis, &work);

    let mut seeds: Vec<EpSeed> = Vec::new();
    for lambda in roots {
        if !search_box.contains(&lambda) {
            continue;
        }
        let sector_roots = matrix_roots(&basis, &kernel, &lambda, &work)?;
        let energy = closest_pair_midpoint(&sector_roots, prec);
        let merge_radius = Float::with_val(
            prec,
            10u32 * ctx.tol().clone() * lambda.magnitude().max(&Float::with_val(prec, 1)),
        );
        if seeds
            .iter()
            .any(|s| (s.lambda.clone() - &lambda).magnitude() < merge_radius)
        {
            continue;
        }
        let branch = branch_from_roots(&basis, &sector_roots);
        seeds.push(EpSeed {
            lambda,
            energy,
            branch,
        });
    }
    seeds.sort_by(|a, b| {
        let ka = (a.lambda.magnitude().to_f64(), a.lambda.re().to_f64());
        let kb = (b.lambda.magnitude().to_f64(), b.lambda.re().to_f64());
        ka.partial_cmp(&kb).unwrap()
    });
    Ok(seeds)
}

fn grid_point(search_box: &SearchBox, ix: usize, iy: usize, prec: u32) -> BigComplex {
    let fx = ix as f64 / (SEED_GRID - 1) as f64;
    let fy = iy as f64 / (SEED_GRID - 1) as f64;
    BigComplex::with_val(
        prec,
        search_box.re_min + fx * (search_box.re_max - search_box.re_min),
        search_box.im_min + fy * (search_box.im_max - search_box.im_min),
    )
}

fn min_root_gap(roots: &[BigComplex], prec: u32) -> Float {
    let mut best: Option<Float> = None;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let gap = (roots[i].clone() - &roots[j]).magnitude();
            best = Some(match best {
                Some(b) => b.min(&gap),
                None => gap,
            });
        }
    }
    best.unwrap_or_else(|| Float::with_val(prec, 1))
}

fn is_local_minimum(gaps: &[Vec<Float>], ix: usize, iy: usize) -> bool {
    let center = &gaps[iy][ix];
    for dy in -1isize..=1 {
        for dx in -1isize..=1 {
            if dx == 0 && dy == 0 {
                continue;
            }
            let nx = ix as isize + dx;
            let ny = iy as isize + dy;
            if nx < 0 || ny < 0 || nx >= SEED_GRID as isize || ny >= SEED_GRID as isize {
                continue;
            }
            if &gaps[ny as usize][nx as usize] < center {
                return false;
            }
        }
    }
    true
}

fn closest_pair_midpoint(roots: &[BigComplex], prec: u32) -> BigComplex {
    let mut best: Option<(Float, usize, usize)> = None;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let gap = (roots[i].clone() - &roots[j]).magnitude();
            if best.as_ref().map_or(true, |(b, _, _)| gap < *b) {
                best = Some((gap, i, j));
            }
        }
    }
    match best {
        Some((_, i, j)) => {
            (roots[i].clone() + &roots[j]) * &BigComplex::with_val(prec, 0.5, 0.0)
        }
        None => BigComplex::zero(prec),
    }
}

/// Newton polish of an eigenvalue collision: joint root of the secular
/// determinant and its E-derivative (by central differences). `None` when
/// the iteration fails — the candidate cell is simply dropped.
fn polish_collision(
    basis: &ParityBasis,
    kernel: &Matrix<Float>,
    energy0: &BigComplex,
    lambda0: &BigComplex,
    work: &PrecisionCtx,
) -> Option<(BigComplex, BigComplex)> {
    let h = BigComplex::from_real(work.fd_step());
    let two_h = h.clone() + &h;
    let secular_det = |e: &BigComplex, lam: &BigComplex| -> Result<BigComplex> {
        let m = assemble_from_kernel(basis, lam, kernel, work);
        let mut a = m.entries.clone();
        for i in 0..a.dim() {
            *a.at_mut(i, i) = a.at(i, i).clone() - e;
        }
        det(&a, work)
    };
    let system = |e: &BigComplex, lam: &BigComplex| -> Result<(BigComplex, BigComplex)> {
        let f = secular_det(e, lam)?;
        let fp = secular_det(&(e.clone() + &h), lam)?;
        let fm = secular_det(&(e.clone() - &h), lam)?;
        Ok((f, (fp - &fm) / &two_h))
    };
    let opts = NewtonOptions {
        accept_stagnation: true,
    };
    let out = newton_2d_with(system, None, (energy0, lambda0), work, opts).ok()?;
    Some((out.x, out.y))
}

fn matrix_roots(
    basis: &ParityBasis,
    kernel: &Matrix<Float>,
    lambda: &BigComplex,
    work: &PrecisionCtx,
) -> Result<Vec<BigComplex>> {
    let matrix = assemble_from_kernel(basis, lambda, kernel, work);
    let poly = char_poly(&matrix.entries, work)?;
    complex_roots(&poly, work)
}

/// Sector-local indices of the two closest secular roots, mapped to global
/// quantum numbers. The ordering of complex roots by real part is a
/// labeling convention, not a physical ordering.
fn branch_from_roots(basis: &ParityBasis, roots: &[BigComplex]) -> (usize, usize) {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&a, &b| {
        (roots[a].re().to_f64(), roots[a].im().to_f64())
            .partial_cmp(&(roots[b].re().to_f64(), roots[b].im().to_f64()))
            .unwrap()
    });
    let mut best = (0usize, 1usize);
    let mut best_gap: Option<Float> = None;
    for w in 0..order.len().saturating_sub(1) {
        let gap = (roots[order[w]].clone() - &roots[order[w + 1]]).magnitude();
        if best_gap.as_ref().map_or(true, |b| gap < *b) {
            best_gap = Some(gap);
            best = (w, w + 1);
        }
    }
    (
        basis.quantum_number(best.0),
        basis.quantum_number(best.1),
    )
}

/// A converged exceptional point: complex coupling and energy where two
/// eigenvalues of one parity sector coalesce.
#[derive(Debug, Clone)]
pub struct ExceptionalPoint {
    sector: Parity,
    branch_label: (usize, usize),
    lambda: BigComplex,
    energy: BigComplex,
    residuals: (Float, Float),
    source_dim: usize,
    converged_digits: u32,
}

impl ExceptionalPoint {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn new(
        sector: Parity,
        branch_label: (usize, usize),
        lambda: BigComplex,
        energy: BigComplex,
        residuals: (Float, Float),
        source_dim: usize,
        converged_digits: u32,
    ) -> Self {
        ExceptionalPoint {
            sector,
            branch_label,
            lambda,
            energy,
            residuals,
            source_dim,
            converged_digits,
        }
    }

    pub fn sector(&self) -> Parity {
        self.sector
    }

    pub fn branch_label(&self) -> (usize, usize) {
        self.branch_label
    }

    pub fn lambda(&self) -> &BigComplex {
        &self.lambda
    }

    pub fn energy(&self) -> &BigComplex {
        &self.energy
    }

    /// Residuals of `(H, dH/dE)` relative to their seed-point scales.
    pub fn residuals(&self) -> (&Float, &Float) {
        (&self.residuals.0, &self.residuals.1)
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn converged_digits(&self) -> u32 {
        self.converged_digits
    }

    /// `|lambda|` — the distance of the branch point to the origin, which
    /// bounds the convergence radius of the perturbation series.
    pub fn modulus(&self) -> Float {
        self.lambda.magnitude()
    }

    /// The mirror point `(conj lambda, conj E)`, which solves the same real
    /// system.
    pub fn conjugate(&self) -> ExceptionalPoint {
        ExceptionalPoint {
            sector: self.sector,
            branch_label: self.branch_label,
            lambda: self.lambda.conjugate(),
            energy: self.energy.conjugate(),
            residuals: self.residuals.clone(),
            source_dim: self.source_dim,
            converged_digits: self.converged_digits,
        }
    }

    /// Canonical sign: non-negative imaginary part of `lambda`.
    pub fn canonical(&self) -> ExceptionalPoint {
        if self.lambda.im().is_sign_negative() {
            self.conjugate()
        } else {
            self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(digits: u32) -> PrecisionCtx {
        PrecisionCtx::new(digits).unwrap()
    }

    #[test]
    fn assemble_one_dimensional_even_sector() {
        let ctx = ctx(40);
        let basis = ParityBasis::new(Parity::Even, 1).unwrap();

        let m0 = assemble(&basis, &ModelParams::new(ctx.float(0.0)).unwrap(), &ctx).unwrap();
        assert_eq!(m0.entries().at(0, 0).to_f64(), 0.5);

        // at lambda = 1 the single entry is 1/2 - 1/sqrt(2)
        let m1 = assemble(&basis, &ModelParams::new(ctx.float(1.0)).unwrap(), &ctx).unwrap();
        let expected = ctx.float(0.5) - ctx.float(2.0).sqrt().recip();
        let diff = (m1.entries().at(0, 0).clone() - expected).abs();
        assert!(diff < ctx.pow10(-35));
    }

    #[test]
    fn assemble_is_exactly_symmetric() {
        let ctx = ctx(40);
        let basis = ParityBasis::new(Parity::Odd, 7).unwrap();
        let m = assemble(&basis, &ModelParams::new(ctx.float(1.7)).unwrap(), &ctx).unwrap();
        assert!(m.entries().is_symmetric());
    }

    #[test]
    fn unperturbed_spectrum_is_h0() {
        let ctx = ctx(40);
        let basis = ParityBasis::new(Parity::Even, 3).unwrap();
        let m = assemble(&basis, &ModelParams::new(ctx.float(0.0)).unwrap(), &ctx).unwrap();
        let evs = eigenvalues(&m, &ctx).unwrap();
        assert_eq!(evs.len(), 3);
        for (i, expected) in [0.5f64, 2.5, 4.5].iter().enumerate() {
            assert!((evs[i].clone() - expected).abs() < ctx.pow10(-30));
        }
    }

    #[test]
    fn eigen_rejects_nonsymmetric() {
        let ctx = ctx(40);
        let mut m = Matrix::zero(2, ctx.prec_bits());
        *m.at_mut(0, 1) = ctx.float(1.0);
        assert!(matches!(
            eigen_symmetric(&m, false, &ctx),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn eigen_known_two_by_two() {
        let ctx = ctx(40);
        // [[2, 1], [1, 2]]: eigenvalues 1 and 3, vectors (1, -1)/sqrt2, (1, 1)/sqrt2
        let m = Matrix::from_rows(vec![
            vec![ctx.float(2.0), ctx.float(1.0)],
            vec![ctx.float(1.0), ctx.float(2.0)],
        ])
        .unwrap();
        let (evs, vecs) = eigen_symmetric(&m, true, &ctx).unwrap();
        assert!((evs[0].clone() - 1f64).abs() < ctx.pow10(-30));
        assert!((evs[1].clone() - 3f64).abs() < ctx.pow10(-30));
        let v = vecs.unwrap();
        // residual |Hv - Ev| for each pair
        for c in 0..2 {
            for r in 0..2 {
                let hv = m.at(r, 0).clone() * v.at(0, c) + m.at(r, 1).clone() * v.at(1, c);
                let ev = evs[c].clone() * v.at(r, c);
                assert!((hv - ev).abs() < ctx.pow10(-30));
            }
        }
    }

    #[test]
    fn eigenvalues_respect_gershgorin() {
        let ctx = ctx(40);
        let basis = ParityBasis::new(Parity::Even, 12).unwrap();
        let m = assemble(&basis, &ModelParams::new(ctx.float(3.0)).unwrap(), &ctx).unwrap();
        let (lo, hi) = m.gershgorin_bounds();
        for e in eigenvalues(&m, &ctx).unwrap() {
            assert!(e >= lo && e <= hi, "{e} outside [{lo}, {hi}]");
        }
    }

    #[test]
    fn converge_state_trivial_at_lambda_zero() {
        let ctx = ctx(40);
        let point = converge_state_with_schedule(0, &ctx.float(0.0), 20, &[1, 2], &ctx).unwrap();
        assert_eq!(point.energy.to_f64(), 0.5);
        assert_eq!(point.method.label(), "RR");
    }

    #[test]
    fn converge_state_reports_ladder_on_failure() {
        let ctx = ctx(40);
        // absurd target on a tiny schedule
        let out = converge_state_with_schedule(0, &ctx.float(1.0), 30, &[2, 3], &ctx);
        match out {
            Err(Error::ConvergenceFailure { trace, .. }) => assert_eq!(trace.len(), 2),
            other => panic!("expected convergence failure, got {other:?}"),
        }
    }

    #[test]
    fn secular_polynomial_trivial_cases() {
        let ctx = ctx(40);
        let even1 = ParityBasis::new(Parity::Even, 1).unwrap();
        let s = secular_polynomial(&even1, &ctx.float(0.0), &ctx).unwrap();
        // det(H - E) = -(E - 1/2) = 1/2 - E
        assert_eq!(s.poly().degree(), Some(1));
        assert!((s.poly().coeff(0).to_f64() - 0.5).abs() < 1e-30);
        assert!((s.poly().coeff(1).to_f64() + 1.0).abs() < 1e-30);

        let even2 = ParityBasis::new(Parity::Even, 2).unwrap();
        let s2 = secular_polynomial(&even2, &ctx.float(0.0), &ctx).unwrap();
        // (E - 1/2)(E - 5/2) = E^2 - 3E + 5/4, leading +1 for D = 2
        assert!((s2.poly().coeff(2).to_f64() - 1.0).abs() < 1e-30);
        assert!((s2.poly().coeff(1).to_f64() + 3.0).abs() < 1e-28);
        assert!((s2.poly().coeff(0).to_f64() - 1.25).abs() < 1e-28);
    }

    #[test]
    fn symbolic_secular_matches_fixed_lambda() {
        let ctx = ctx(40);
        let basis = ParityBasis::new(Parity::Even, 4).unwrap();
        let sym = secular_polynomial_symbolic(&basis, &ctx).unwrap();
        for lam in [0.0, 0.7, -1.3] {
            let fixed = secular_polynomial(&basis, &ctx.float(lam), &ctx).unwrap();
            let lam_c = BigComplex::with_val(ctx.prec_bits(), lam, 0.0);
            for k in 0..=4 {
                let from_sym = sym.f().coeffs_in_e()[k].eval(&ctx.float(lam));
                let diff = (from_sym - fixed.poly().coeff(k)).abs();
                assert!(diff < ctx.pow10(-25), "coefficient {k} at lambda {lam}");
            }
            // and the bivariate evaluation agrees
            let e = BigComplex::with_val(ctx.prec_bits(), 0.9, 0.0);
            let val = sym.f().eval(&e, &lam_c);
            let direct = fixed.poly().eval(&ctx.float(0.9));
            assert!((val.re().clone() - direct).abs() < ctx.pow10(-25));
        }
    }

    #[test]
    fn symbolic_secular_respects_cap() {
        let ctx = ctx(40);
        let basis = ParityBasis::new(Parity::Even, 17).unwrap();
        assert!(matches!(
            secular_polynomial_symbolic(&basis, &ctx),
            Err(Error::Capacity(_))
        ));
    }

    #[test]
    fn search_box_validation() {
        assert!(SearchBox::new(-4.0, 0.0, 0.0, 4.0).is_ok());
        assert!(SearchBox::new(0.0, -4.0, 0.0, 4.0).is_err());
    }
}
