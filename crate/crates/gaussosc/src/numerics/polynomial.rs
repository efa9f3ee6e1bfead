use rug::Float;

use crate::error::{Error, Result};
use crate::numerics::matrix::{det, Matrix};
use crate::numerics::scalar::{BigComplex, Scalar};
use crate::precision::PrecisionCtx;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// Trailing coefficients that are exactly zero are trimmed on construction,
/// so `degree` reflects the leading nonzero coefficient. The empty
/// coefficient list is the zero polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
    prec: u32,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>, prec: u32) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_val()) {
            coeffs.pop();
        }
        Polynomial { coeffs, prec }
    }

    pub fn zero(prec: u32) -> Self {
        Polynomial {
            coeffs: Vec::new(),
            prec,
        }
    }

    pub fn constant(value: T) -> Self {
        let prec = value.prec_of();
        Polynomial::new(vec![value], prec)
    }

    pub fn from_f64s(values: &[f64], prec: u32) -> Self {
        Polynomial::new(
            values.iter().map(|&v| T::from_f64(prec, v)).collect(),
            prec,
        )
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the stored degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| T::zero(self.prec))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero(self.prec);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial<T> {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.prec);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * &T::from_f64(self.prec, k as f64))
            .collect();
        Polynomial::new(coeffs, self.prec)
    }

    pub fn add(&self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + &rhs.coeff(k)).collect();
        Polynomial::new(coeffs, self.prec)
    }

    pub fn sub(&self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - &rhs.coeff(k)).collect();
        Polynomial::new(coeffs, self.prec)
    }

    pub fn mul(&self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.prec);
        }
        let mut coeffs = vec![T::zero(self.prec); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b;
            }
        }
        Polynomial::new(coeffs, self.prec)
    }

    pub fn scale(&self, factor: &T) -> Polynomial<T> {
        Polynomial::new(
            self.coeffs.iter().map(|c| c.clone() * factor).collect(),
            self.prec,
        )
    }

    pub fn neg(&self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect(), self.prec)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial<T>) -> Result<(Polynomial<T>, Polynomial<T>)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::invalid("polynomial division by zero"))?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Polynomial::zero(self.prec), self.clone()));
        }
        let qlen = rem.len() - dd;
        let mut q = vec![T::zero(self.prec); qlen];
        for k in (0..qlen).rev() {
            let factor = rem[k + dd].clone() / &lead;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let delta = factor.clone() * d;
                rem[k + j] = rem[k + j].clone() - &delta;
            }
            q[k] = factor;
        }
        rem.truncate(dd);
        Ok((Polynomial::new(q, self.prec), Polynomial::new(rem, self.prec)))
    }

    /// Drop leading coefficients whose magnitude is below
    /// `ratio * max coefficient magnitude`. Used to clean numerically
    /// reconstructed polynomials whose formal degree overshoots.
    pub fn trim_relative(&self, ratio: &Float) -> Polynomial<T> {
        let mut max_mag = Float::new(self.prec);
        for c in &self.coeffs {
            let m = c.magnitude();
            if m > max_mag {
                max_mag = m;
            }
        }
        let threshold = max_mag * ratio;
        let mut coeffs = self.coeffs.clone();
        while coeffs
            .last()
            .is_some_and(|c| c.magnitude() <= threshold)
        {
            coeffs.pop();
        }
        Polynomial::new(coeffs, self.prec)
    }
}

impl Polynomial<Float> {
    /// View a real polynomial as a complex one.
    pub fn lift_complex(&self) -> Polynomial<BigComplex> {
        Polynomial::new(
            self.coeffs
                .iter()
                .map(|c| BigComplex::from_real(c.clone()))
                .collect(),
            self.prec,
        )
    }
}

/// All complex roots by the Durand-Kerner (Weierstrass) simultaneous
/// iteration. Deterministic: fixed starting configuration, fixed sweep order.
///
/// Simple roots converge to full working precision; a root of multiplicity m
/// is resolved as a cluster of m values whose centroid is accurate to roughly
/// `digits/m` digits (callers exploiting clusters should average them).
pub fn complex_roots(
    poly: &Polynomial<BigComplex>,
    ctx: &PrecisionCtx,
) -> Result<Vec<BigComplex>> {
    let n = match poly.degree() {
        None => return Err(Error::invalid("roots of the zero polynomial")),
        Some(0) => return Ok(Vec::new()),
        Some(n) => n,
    };
    let prec = ctx.prec_bits();
    let lead = poly.leading().unwrap().clone();
    let monic: Vec<BigComplex> = poly
        .coeffs()
        .iter()
        .map(|c| c.clone() / &lead)
        .collect();
    let monic = Polynomial::new(monic, prec);

    // Cauchy bound: all roots lie inside 1 + max |c_k|
    let mut bound = Float::with_val(prec, 0);
    for c in monic.coeffs().iter().take(n) {
        let m = c.magnitude();
        if m > bound {
            bound = m;
        }
    }
    let radius = bound * 0.5f64 + 1f64;

    let seed = BigComplex::with_val(prec, 0.4, 0.9);
    let mut roots = Vec::with_capacity(n);
    let mut z = BigComplex::from_real(radius.clone());
    for _ in 0..n {
        z = z * &seed;
        roots.push(z.clone());
    }

    let step_tol = ctx.pow10(-(i64::from(ctx.digits()) - 3));
    let max_iters = 2000;
    for iter in 0..max_iters {
        let mut max_step = Float::new(prec);
        for k in 0..n {
            let mut denom = BigComplex::one(prec);
            for j in 0..n {
                if j != k {
                    denom = denom * &(roots[k].clone() - &roots[j]);
                }
            }
            if denom.is_zero_val() {
                // collided starting points; nudge deterministically
                roots[k] = roots[k].clone() + &BigComplex::with_val(prec, 1e-3, 2e-3);
                continue;
            }
            let delta = monic.eval(&roots[k]) / &denom;
            let step = delta.magnitude();
            if step > max_step {
                max_step = step;
            }
            roots[k] = roots[k].clone() - &delta;
        }
        let mut scale = Float::with_val(prec, 1);
        for r in &roots {
            let m = r.magnitude();
            if m > scale {
                scale = m;
            }
        }
        if max_step <= step_tol.clone() * scale {
            return Ok(roots);
        }
        if iter == max_iters - 1 {
            return Err(Error::ConvergenceFailure {
                iterations: max_iters as u32,
                last: format!("{}", roots[0]),
                trace: roots.iter().map(|r| format!("{r}")).collect(),
            });
        }
    }
    unreachable!()
}

/// Resultant of `p` and `q` as the determinant of the Sylvester matrix built
/// from the *formal* degrees `dp`, `dq` (coefficients beyond the stored
/// degree are taken as zero). Formal degrees matter when coefficients vanish
/// only numerically, e.g. when sampling a bivariate polynomial.
pub fn sylvester_resultant<T: Scalar>(
    p: &Polynomial<T>,
    q: &Polynomial<T>,
    dp: usize,
    dq: usize,
    ctx: &PrecisionCtx,
) -> Result<T> {
    if dp == 0 || dq == 0 {
        return Err(Error::invalid(
            "sylvester_resultant requires both formal degrees >= 1",
        ));
    }
    let n = dp + dq;
    let prec = ctx.prec_bits();
    let mut m = Matrix::zero(n, prec);
    for row in 0..dq {
        for k in 0..=dp {
            // descending coefficients of p, shifted right by `row`
            *m.at_mut(row, row + k) = p.coeff(dp - k);
        }
    }
    for row in 0..dp {
        for k in 0..=dq {
            *m.at_mut(dq + row, row + k) = q.coeff(dq - k);
        }
    }
    det(&m, ctx)
}

/// Bivariate polynomial `F(E, lambda)` stored as a polynomial in `E` whose
/// coefficients are real polynomials in `lambda`.
#[derive(Debug, Clone)]
pub struct BivariatePoly {
    coeffs_in_e: Vec<Polynomial<Float>>,
    prec: u32,
}

impl BivariatePoly {
    pub fn new(mut coeffs_in_e: Vec<Polynomial<Float>>, prec: u32) -> Self {
        while coeffs_in_e.last().is_some_and(|c| c.is_zero()) {
            coeffs_in_e.pop();
        }
        BivariatePoly { coeffs_in_e, prec }
    }

    pub fn coeffs_in_e(&self) -> &[Polynomial<Float>] {
        &self.coeffs_in_e
    }

    pub fn degree_e(&self) -> Option<usize> {
        self.coeffs_in_e.len().checked_sub(1)
    }

    pub fn max_lambda_degree(&self) -> usize {
        self.coeffs_in_e
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn derivative_e(&self) -> BivariatePoly {
        if self.coeffs_in_e.len() <= 1 {
            return BivariatePoly::new(Vec::new(), self.prec);
        }
        let coeffs = self
            .coeffs_in_e
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Float::with_val(self.prec, k)))
            .collect();
        BivariatePoly::new(coeffs, self.prec)
    }

    /// Collapse to a univariate polynomial in `E` at a fixed complex
    /// `lambda`.
    pub fn at_lambda(&self, lambda: &BigComplex) -> Polynomial<BigComplex> {
        let coeffs = self
            .coeffs_in_e
            .iter()
            .map(|c| c.lift_complex().eval(lambda))
            .collect();
        Polynomial::new(coeffs, self.prec)
    }

    pub fn eval(&self, energy: &BigComplex, lambda: &BigComplex) -> BigComplex {
        self.at_lambda(lambda).eval(energy)
    }
}

/// Default evaluation radius for [`discriminant_in_e`]: accurate roots inside
/// `|lambda| < 4`.
const DISC_DEFAULT_RADIUS: f64 = 4.0;

/// Discriminant of `F(E, lambda)` with respect to `E`, as a polynomial in
/// `lambda`:
///
/// `Disc_E(F) = (-1)^(D(D-1)/2) Res_E(F, dF/dE) / lc_E(F)`
///
/// The resultant is the Sylvester-matrix determinant, evaluated at sample
/// points on a complex circle and reconstructed by the inverse DFT. Roots of
/// the returned polynomial are reliable inside the sampling radius
/// (default 4); use [`discriminant_in_e_within`] when a larger region is
/// needed.
pub fn discriminant_in_e(f: &BivariatePoly, ctx: &PrecisionCtx) -> Result<Polynomial<Float>> {
    discriminant_in_e_within(f, DISC_DEFAULT_RADIUS, ctx)
}

/// Same as [`discriminant_in_e`] with an explicit sampling radius covering
/// the region whose roots matter to the caller.
pub fn discriminant_in_e_within(
    f: &BivariatePoly,
    radius: f64,
    ctx: &PrecisionCtx,
) -> Result<Polynomial<Float>> {
    let deg_e = f.degree_e().unwrap_or(0);
    if deg_e < 2 {
        return Err(Error::invalid(
            "discriminant_in_e requires degree >= 2 in E",
        ));
    }
    let fe = f.derivative_e();
    let nf = f.max_lambda_degree();
    let ng = fe.max_lambda_degree();
    let bound = (deg_e - 1) * nf + deg_e * ng;
    let samples = bound + 1;

    // Guard digits: reconstruction error scales like (radius/r)^bound for a
    // root at |lambda| = r, so spend extra digits proportional to the degree.
    let work = ctx.with_digits(ctx.digits() + (bound as u32) / 2 + 15)?;
    let prec = work.prec_bits();

    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2f64;
    let r = Float::with_val(prec, radius);

    let mut values = Vec::with_capacity(samples);
    for m in 0..samples {
        let theta = two_pi.clone() * Float::with_val(prec, m as u32) / Float::with_val(prec, samples as u32);
        let lambda = BigComplex::unit_phase(prec, &theta) * &BigComplex::from_real(r.clone());
        let p = raise_prec(&f.at_lambda(&lambda), prec);
        let q = raise_prec(&fe.at_lambda(&lambda), prec);
        values.push(sylvester_resultant(&p, &q, deg_e, deg_e - 1, &work)?);
    }

    // inverse DFT, dividing out radius^k per coefficient
    let m_inv = Float::with_val(prec, 1) / Float::with_val(prec, samples as u32);
    let mut coeffs = Vec::with_capacity(samples);
    let mut radius_pow = Float::with_val(prec, 1);
    for k in 0..samples {
        let mut acc = BigComplex::zero(prec);
        for (m, v) in values.iter().enumerate() {
            let theta = -two_pi.clone() * Float::with_val(prec, (k * m % samples) as u64)
                / Float::with_val(prec, samples as u32);
            acc = acc + &(v.clone() * &BigComplex::unit_phase(prec, &theta));
        }
        let c = acc * &BigComplex::from_real(m_inv.clone() / &radius_pow);
        coeffs.push(c);
        radius_pow *= &r;
    }

    // imaginary residue must be noise: the input has real coefficients
    let mut max_re = Float::new(prec);
    let mut max_im = Float::new(prec);
    for c in &coeffs {
        let re = c.re().clone().abs();
        let im = c.im().clone().abs();
        if re > max_re {
            max_re = re;
        }
        if im > max_im {
            max_im = im;
        }
    }
    let floor = work.pow10(-i64::from(ctx.digits() / 2));
    if !max_re.is_zero() && max_im > max_re.clone() * &floor {
        return Err(Error::invalid(
            "discriminant reconstruction produced a non-real polynomial; \
             input coefficients are expected to be real",
        ));
    }

    let sign = if (deg_e * (deg_e - 1) / 2) % 2 == 1 {
        -1.0
    } else {
        1.0
    };
    let resultant = Polynomial::new(
        coeffs
            .into_iter()
            .map(|c| {
                let (re, _) = c.into_parts();
                Float::with_val(ctx.prec_bits(), re * sign)
            })
            .collect(),
        ctx.prec_bits(),
    );
    let trimmed = resultant.trim_relative(&ctx.pow10(-i64::from(ctx.digits() / 2)));

    // normalize by the leading coefficient of F in E
    let lc = &f.coeffs_in_e[deg_e];
    match lc.degree() {
        Some(0) => {
            let inv = Float::with_val(ctx.prec_bits(), 1) / lc.coeff(0);
            Ok(trimmed.scale(&inv))
        }
        _ => {
            let lc_low = Polynomial::new(
                lc.coeffs()
                    .iter()
                    .map(|c| Float::with_val(ctx.prec_bits(), c))
                    .collect(),
                ctx.prec_bits(),
            );
            let (q, _r) = trimmed.div_rem(&lc_low)?;
            Ok(q)
        }
    }
}

/// Monic characteristic polynomial `det(E I - A)` by the
/// Faddeev-LeVerrier recursion.
pub fn char_poly<T: Scalar>(a: &Matrix<T>, ctx: &PrecisionCtx) -> Result<Polynomial<T>> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::invalid("characteristic polynomial of a 0x0 matrix"));
    }
    let prec = ctx.prec_bits();
    let mut coeffs = vec![T::zero(prec); n + 1];
    coeffs[n] = T::one(prec);
    let mut mk = Matrix::identity(n, prec);
    for k in 1..=n {
        let b = a.mul(&mk);
        let c = -(b.trace() / T::from_f64(prec, k as f64));
        coeffs[n - k] = c.clone();
        mk = b;
        for i in 0..n {
            *mk.at_mut(i, i) = mk.at(i, i).clone() + &c;
        }
    }
    Ok(Polynomial::new(coeffs, prec))
}

fn raise_prec(p: &Polynomial<BigComplex>, prec: u32) -> Polynomial<BigComplex> {
    Polynomial::new(
        p.coeffs()
            .iter()
            .map(|c| {
                BigComplex::new(
                    Float::with_val(prec, c.re()),
                    Float::with_val(prec, c.im()),
                )
            })
            .collect(),
        prec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionCtx {
        PrecisionCtx::new(40).unwrap()
    }

    #[test]
    fn eval_and_derivative() {
        let ctx = ctx();
        let p: Polynomial<Float> = Polynomial::from_f64s(&[1.0, -3.0, 2.0], ctx.prec_bits());
        // p(x) = 2x^2 - 3x + 1, p(2) = 3, p'(x) = 4x - 3, p'(2) = 5
        assert_eq!(p.eval(&ctx.float(2.0)).to_f64(), 3.0);
        assert_eq!(p.derivative().eval(&ctx.float(2.0)).to_f64(), 5.0);
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let ctx = ctx();
        let p: Polynomial<Float> =
            Polynomial::from_f64s(&[1.0, 2.0, 0.0, 0.0], ctx.prec_bits());
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn div_rem_reconstructs() {
        let ctx = ctx();
        let p: Polynomial<Float> =
            Polynomial::from_f64s(&[2.0, -1.0, 0.0, 3.0], ctx.prec_bits());
        let d: Polynomial<Float> = Polynomial::from_f64s(&[1.0, 1.0], ctx.prec_bits());
        let (q, r) = p.div_rem(&d).unwrap();
        let back = q.mul(&d).add(&r);
        for k in 0..4 {
            assert!((back.coeff(k) - p.coeff(k)).abs().to_f64() < 1e-35);
        }
    }

    #[test]
    fn durand_kerner_simple_roots() {
        let ctx = ctx();
        // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
        let p: Polynomial<BigComplex> =
            Polynomial::from_f64s(&[-6.0, 11.0, -6.0, 1.0], ctx.prec_bits());
        let mut roots: Vec<f64> = complex_roots(&p, &ctx)
            .unwrap()
            .iter()
            .map(|z| z.re().to_f64())
            .collect();
        roots.sort_by(f64::total_cmp);
        assert!((roots[0] - 1.0).abs() < 1e-30);
        assert!((roots[1] - 2.0).abs() < 1e-30);
        assert!((roots[2] - 3.0).abs() < 1e-30);
    }

    #[test]
    fn durand_kerner_complex_pair() {
        let ctx = ctx();
        // x^2 + 1
        let p: Polynomial<BigComplex> = Polynomial::from_f64s(&[1.0, 0.0, 1.0], ctx.prec_bits());
        let roots = complex_roots(&p, &ctx).unwrap();
        for z in &roots {
            assert!(z.re().to_f64().abs() < 1e-30);
            assert!((z.im().to_f64().abs() - 1.0).abs() < 1e-30);
        }
    }

    #[test]
    fn resultant_of_coprime_and_shared_root() {
        let ctx = ctx();
        // Res(x-1, x-2) = (x-2) evaluated at x=1, i.e. -1; x-1 and 2x-2 share a root
        let p: Polynomial<Float> = Polynomial::from_f64s(&[-1.0, 1.0], ctx.prec_bits());
        let q: Polynomial<Float> = Polynomial::from_f64s(&[-2.0, 1.0], ctx.prec_bits());
        let r = sylvester_resultant(&p, &q, 1, 1, &ctx).unwrap();
        assert!((r.to_f64() + 1.0).abs() < 1e-30);

        let q2: Polynomial<Float> = Polynomial::from_f64s(&[-2.0, 2.0], ctx.prec_bits());
        let r2 = sylvester_resultant(&p, &q2, 1, 1, &ctx).unwrap();
        assert!(r2.to_f64().abs() < 1e-30);
    }

    #[test]
    fn discriminant_of_simple_quadratics() {
        let ctx = ctx();
        let prec = ctx.prec_bits();
        // F = E^2 - lambda: coefficients in E are [-lambda, 0, 1]
        let f = BivariatePoly::new(
            vec![
                Polynomial::from_f64s(&[0.0, -1.0], prec),
                Polynomial::zero(prec),
                Polynomial::from_f64s(&[1.0], prec),
            ],
            prec,
        );
        let d = discriminant_in_e(&f, &ctx).unwrap();
        // b^2 - 4ac = 4 lambda: proportional to lambda with a root at 0
        assert_eq!(d.degree(), Some(1));
        assert!(d.coeff(0).to_f64().abs() < 1e-30);
        assert!((d.coeff(1).to_f64() - 4.0).abs() < 1e-25);

        // F = E^2 - 2 lambda E + 1: disc = 4 lambda^2 - 4, roots at +-1
        let f2 = BivariatePoly::new(
            vec![
                Polynomial::from_f64s(&[1.0], prec),
                Polynomial::from_f64s(&[0.0, -2.0], prec),
                Polynomial::from_f64s(&[1.0], prec),
            ],
            prec,
        );
        let d2 = discriminant_in_e(&f2, &ctx).unwrap();
        assert_eq!(d2.degree(), Some(2));
        assert!((d2.coeff(2).to_f64() - 4.0).abs() < 1e-25);
        assert!((d2.coeff(0).to_f64() + 4.0).abs() < 1e-25);
        assert!(d2.coeff(1).to_f64().abs() < 1e-25);
    }

    #[test]
    fn discriminant_rejects_degree_below_two() {
        let ctx = ctx();
        let prec = ctx.prec_bits();
        let f = BivariatePoly::new(
            vec![
                Polynomial::from_f64s(&[0.0, 1.0], prec),
                Polynomial::from_f64s(&[1.0], prec),
            ],
            prec,
        );
        assert!(matches!(
            discriminant_in_e(&f, &ctx),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn char_poly_of_diagonal() {
        let ctx = ctx();
        let m = Matrix::from_rows(vec![
            vec![ctx.float(1.0), ctx.float(0.0)],
            vec![ctx.float(0.0), ctx.float(2.0)],
        ])
        .unwrap();
        let p = char_poly(&m, &ctx).unwrap();
        // (E-1)(E-2) = E^2 - 3E + 2
        assert!((p.coeff(0).to_f64() - 2.0).abs() < 1e-30);
        assert!((p.coeff(1).to_f64() + 3.0).abs() < 1e-30);
        assert!((p.coeff(2).to_f64() - 1.0).abs() < 1e-30);
    }
}
