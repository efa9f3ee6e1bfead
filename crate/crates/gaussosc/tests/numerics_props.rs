//! Property and oracle tests for the shared numerical kernels.

use gaussosc::numerics::{
    complex_roots, det, discriminant_in_e, newton_1d, BigComplex, BivariatePoly, Matrix,
    Polynomial, Scalar,
};
use gaussosc::oracles::{rational_det, ratio, to_float};
use gaussosc::oscillator::{ModelParams, Parity, ParityBasis};
use gaussosc::rayleigh_ritz::secular_polynomial_symbolic;
use gaussosc::{Float, PrecisionCtx};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(digits: u32) -> PrecisionCtx {
    PrecisionCtx::new(digits).unwrap()
}

#[test]
fn hilbert_determinant_matches_exact_rational_elimination() {
    let ctx = ctx(50);
    let n = 5;
    let m = Matrix::from_fn(n, |i, j| {
        Float::with_val(ctx.prec_bits(), 1) / Float::with_val(ctx.prec_bits(), (i + j + 1) as u32)
    });
    let d = det(&m, &ctx).unwrap();

    let rows: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| ratio(1, (i + j + 1) as i64)).collect())
        .collect();
    let exact = rational_det(&rows);
    let exact_f = to_float(&exact, ctx.prec_bits());

    // digits - 5 matching places despite the notorious conditioning
    let rel = ((d - &exact_f) / exact_f).abs();
    assert!(rel < ctx.pow10(-45), "relative error {rel}");
}

#[test]
fn block_diagonal_determinant_factorizes() {
    let ctx = ctx(40);
    let prec = ctx.prec_bits();
    let mut rng = ChaCha8Rng::seed_from_u64(42);

    for trial in 0..100 {
        let a = Matrix::from_fn(2, |_, _| ctx.float(rng.gen_range(-3.0..3.0)));
        let b = Matrix::from_fn(3, |_, _| ctx.float(rng.gen_range(-3.0..3.0)));
        let mut full: Matrix<Float> = Matrix::zero(5, prec);
        for i in 0..2 {
            for j in 0..2 {
                *full.at_mut(i, j) = a.at(i, j).clone();
            }
        }
        for i in 0..3 {
            for j in 0..3 {
                *full.at_mut(2 + i, 2 + j) = b.at(i, j).clone();
            }
        }
        let lhs = det(&full, &ctx).unwrap();
        let rhs = det(&a, &ctx).unwrap() * det(&b, &ctx).unwrap();
        let scale = rhs.clone().abs().max(&ctx.float(1e-20));
        let rel = ((lhs - &rhs) / scale).abs();
        assert!(rel < ctx.pow10(-30), "trial {trial}: relative error {rel}");
    }
}

#[test]
fn newton_recovers_rational_root_from_nearby_seeds() {
    let ctx = ctx(40);
    // p(x) = (x - 3/7)(x^2 + 2); root 3/7 is the only real one
    let root = ctx.float(3.0) / 7u32;
    let p = |x: &Float| {
        let lin = x.clone() - &root;
        let quad = x.clone().square() + 2u32;
        Ok(lin * quad)
    };
    for offset in [-0.1, -0.043, 0.017, 0.05, 0.1] {
        let seed = root.clone() + ctx.float(offset);
        let out = newton_1d(p, None, &seed, &ctx).unwrap();
        let err = (out.root - &root).abs();
        assert!(
            err <= ctx.tol().clone() * 2u32,
            "seed offset {offset}: error {err}"
        );
    }
}

#[test]
fn discriminant_vanishes_identically_for_squared_factor() {
    let ctx = ctx(40);
    let prec = ctx.prec_bits();
    // F = (E - a(lambda))^2 (E - b(lambda)), a = 1 + 2 lambda, b = -1 + lambda/2
    let a: Polynomial<Float> = Polynomial::from_f64s(&[1.0, 2.0], prec);
    let b: Polynomial<Float> = Polynomial::from_f64s(&[-1.0, 0.5], prec);
    let a2 = a.mul(&a);
    let ab = a.mul(&b);
    let two = ctx.float(2.0);
    // E^3 - (2a+b) E^2 + (a^2 + 2ab) E - a^2 b
    let f = BivariatePoly::new(
        vec![
            a2.mul(&b).neg(),
            a2.add(&ab.scale(&two)),
            a.scale(&two).add(&b).neg(),
            Polynomial::from_f64s(&[1.0], prec),
        ],
        prec,
    );
    let disc = discriminant_in_e(&f, &ctx).unwrap();
    // the double root exists at every coupling, so the discriminant is the
    // zero polynomial up to reconstruction noise
    if !disc.is_zero() {
        for lam in [-2.0, -0.3, 0.0, 1.1, 2.7] {
            let v = disc.eval(&ctx.float(lam)).abs();
            assert!(v < ctx.pow10(-20), "disc({lam}) = {v}");
        }
    }
}

#[test]
fn discriminant_locates_isolated_double_root() {
    let ctx = ctx(40);
    let prec = ctx.prec_bits();
    // F = (E - u)(E - v) with u + v = lambda, u - v = 3(lambda - 1/2):
    // disc = (u - v)^2 = 9 (lambda - 1/2)^2
    let sum: Polynomial<Float> = Polynomial::from_f64s(&[0.0, 1.0], prec);
    let diff: Polynomial<Float> = Polynomial::from_f64s(&[-1.5, 3.0], prec);
    // E^2 - (u+v) E + (sum^2 - diff^2)/4
    let product = sum
        .mul(&sum)
        .sub(&diff.mul(&diff))
        .scale(&ctx.float(0.25));
    let f = BivariatePoly::new(
        vec![product, sum.neg(), Polynomial::from_f64s(&[1.0], prec)],
        prec,
    );
    let disc = discriminant_in_e(&f, &ctx).unwrap();
    assert_eq!(disc.degree(), Some(2));
    let at_half = disc.eval(&ctx.float(0.5)).abs();
    assert!(at_half < ctx.pow10(-20), "disc(1/2) = {at_half}");
    let away = disc.eval(&ctx.float(1.5)).abs();
    assert!((away - 9f64).abs() < ctx.pow10(-20), "disc(3/2)");
}

#[test]
fn two_by_two_secular_discriminant_agrees_with_grid_scanned_collisions() {
    // DERIVED oracle: dense complex-lambda grid scan of the eigenvalue gap
    // computed by the explicit quadratic formula, independent of the
    // Sylvester-matrix route.
    let ctx = ctx(40);
    let prec = ctx.prec_bits();
    let basis = ParityBasis::new(Parity::Even, 2).unwrap();
    let sym = secular_polynomial_symbolic(&basis, &ctx).unwrap();
    let disc = discriminant_in_e(sym.f(), &ctx).unwrap();
    let roots = complex_roots(&disc.lift_complex(), &ctx).unwrap();
    let upper: Vec<&BigComplex> = roots.iter().filter(|z| z.im().is_sign_positive()).collect();
    assert_eq!(upper.len(), 1, "one collision in the upper half-plane");
    let root = upper[0];

    // oracle: gap(lambda) = sqrt((h11-h22)^2 + 4 h12^2) via the quadratic
    // formula on the assembled 2x2 matrix, scanned on a dense grid
    let mut best = (f64::MAX, 0.0f64, 0.0f64);
    for iy in 0..81 {
        for ix in 0..81 {
            let re = -3.0 + 2.0 * ix as f64 / 80.0;
            let im = 1.2 + 2.0 * iy as f64 / 80.0;
            let lam = BigComplex::with_val(prec, re, im);
            let m = gaussosc::rayleigh_ritz::assemble(
                &basis,
                &ModelParams::new(lam.clone()).unwrap(),
                &ctx,
            )
            .unwrap();
            let h11 = m.entries().at(0, 0).clone();
            let h22 = m.entries().at(1, 1).clone();
            let h12 = m.entries().at(0, 1).clone();
            let four = BigComplex::from_f64(prec, 4.0);
            let diff = h11 - &h22;
            let gap2 = diff.clone() * &diff + (h12.clone() * &h12) * &four;
            let g = gap2.magnitude().to_f64();
            if g < best.0 {
                best = (g, re, im);
            }
        }
    }
    let dre = (root.re().to_f64() - best.1).abs();
    let dim = (root.im().to_f64() - best.2).abs();
    // grid spacing is 0.025
    assert!(dre < 0.05 && dim < 0.05, "disc root ({}, {}) vs grid ({}, {})",
        root.re().to_f64(), root.im().to_f64(), best.1, best.2);
}

#[test]
fn operations_are_bit_deterministic() {
    let ctx = ctx(45);
    let m = Matrix::from_fn(6, |i, j| {
        ctx.float(((i * 7 + j * 3) % 11) as f64 / 7.0 - 0.6)
    });
    let d1 = det(&m, &ctx).unwrap();
    let d2 = det(&m, &ctx).unwrap();
    assert_eq!(d1, d2);

    let p: Polynomial<BigComplex> =
        Polynomial::from_f64s(&[-1.0, 0.4, 2.0, 1.0], ctx.prec_bits());
    let r1 = complex_roots(&p, &ctx).unwrap();
    let r2 = complex_roots(&p, &ctx).unwrap();
    assert_eq!(r1, r2);

    let f = |x: &Float| Ok(x.clone().square() - 5u32);
    let n1 = newton_1d(f, None, &ctx.float(2.0), &ctx).unwrap();
    let n2 = newton_1d(f, None, &ctx.float(2.0), &ctx).unwrap();
    assert_eq!(n1.root, n2.root);
}
