//! Oracle tests for the model layer: Gaussian matrix elements against the
//! exact moment route and a high-order quadrature, potential coefficients
//! against symbolic differentiation.

use gaussosc::oracles::{gaussian_element_by_moments, q_coeffs, ratio, to_float};
use gaussosc::oscillator::{gaussian_matrix_element, potential_series_coeffs};
use gaussosc::{Float, PrecisionCtx};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctx(digits: u32) -> PrecisionCtx {
    PrecisionCtx::new(digits).unwrap()
}

/// Normalized oscillator eigenfunction values by the stable three-term
/// recurrence `phi_n = x sqrt(2/n) phi_{n-1} - sqrt((n-1)/n) phi_{n-2}`.
fn phi(n: usize, x: &Float, prec: u32) -> Float {
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let mut prev = pi.root(4).recip() * (-x.clone().square() / 2u32).exp();
    if n == 0 {
        return prev;
    }
    let mut curr = x.clone() * Float::with_val(prec, 2).sqrt() * &prev;
    for k in 2..=n {
        let a = (Float::with_val(prec, 2) / Float::with_val(prec, k as u32)).sqrt();
        let b = (Float::with_val(prec, (k - 1) as u32) / Float::with_val(prec, k as u32)).sqrt();
        let next = x.clone() * a * &curr - b * &prev;
        prev = curr;
        curr = next;
    }
    curr
}

/// 201-node trapezoid quadrature of `phi_m phi_n exp(-x^2)` over [-16, 16].
/// The integrand decays like `exp(-2x^2)` times a polynomial, so both the
/// truncation and discretization errors sit far below working precision.
fn quadrature_element(m: usize, n: usize, ctx: &PrecisionCtx) -> Float {
    let prec = ctx.prec_bits();
    let nodes = 201;
    let length = Float::with_val(prec, 32); // [-16, 16]
    let h = length / Float::with_val(prec, (nodes - 1) as u32);
    let mut acc = Float::new(prec);
    for k in 0..nodes {
        let x = Float::with_val(prec, -16) + h.clone() * Float::with_val(prec, k as u32);
        let weight = if k == 0 || k == nodes - 1 { 0.5 } else { 1.0 };
        let value = phi(m, &x, prec) * phi(n, &x, prec) * (-x.clone().square()).exp();
        acc += value * Float::with_val(prec, weight);
    }
    acc * h
}

#[test]
fn gaussian_elements_match_moment_oracle_up_to_40() {
    let ctx = ctx(50);
    for (m, n) in [
        (0, 0),
        (1, 1),
        (0, 2),
        (2, 2),
        (3, 7),
        (6, 12),
        (15, 15),
        (10, 24),
        (40, 40),
        (0, 40),
        (25, 39),
    ] {
        let fast = gaussian_matrix_element(m, n, &ctx);
        let oracle = gaussian_element_by_moments(m, n, ctx.prec_bits());
        let err = (fast - &oracle).abs();
        assert!(err < ctx.pow10(-42), "({m},{n}): error {err}");
    }
}

#[test]
fn gaussian_elements_match_quadrature() {
    let ctx = ctx(50);
    for (m, n) in [(0, 0), (1, 1), (0, 2), (7, 7), (12, 20), (39, 39)] {
        let closed = gaussian_matrix_element(m, n, &ctx);
        let quad = quadrature_element(m, n, &ctx);
        let err = (closed - &quad).abs();
        assert!(err < ctx.pow10(-40), "({m},{n}): error {err}");
    }
}

#[test]
fn q_coefficients_match_symbolic_differentiation_oracle() {
    let work = ctx(60);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let e_num = rng.gen_range(-40i64..40);
        let l_num = rng.gen_range(-40i64..40);
        let e_rat = ratio(e_num, 16);
        let l_rat = ratio(l_num, 16);
        let e = to_float(&e_rat, work.prec_bits());
        let lam = to_float(&l_rat, work.prec_bits());
        let q = potential_series_coeffs(&e, &lam, 12, &work);
        let exact = q_coeffs(&e_rat, &l_rat, 12);
        for k in 0..=12 {
            let err = (q[k].clone() - to_float(&exact[k], work.prec_bits())).abs();
            assert!(
                err < work.pow10(-50),
                "k = {k}, E = {e_num}/16, lambda = {l_num}/16: error {err}"
            );
        }
    }
}
