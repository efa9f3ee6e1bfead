use gaussosc::numerics::{char_poly, complex_roots, det, newton_2d_with, BigComplex, NewtonOptions, Scalar};
use gaussosc::oscillator::{ModelParams, Parity, ParityBasis};
use gaussosc::rayleigh_ritz::assemble;
use gaussosc::{Float, PrecisionCtx};

fn main() {
    let ctx = PrecisionCtx::new(35).unwrap();
    let prec = ctx.prec_bits();
    let basis = ParityBasis::new(Parity::Even, 10).unwrap();

    // gap landscape near the expected EP
    let mut best = (Float::with_val(prec, 1e9), BigComplex::zero(prec), BigComplex::zero(prec));
    for iy in 0..21 {
        for ix in 0..21 {
            let re = -4.0 + 4.0 * ix as f64 / 20.0;
            let im = 0.0 + 4.0 * iy as f64 / 20.0;
            let lam = BigComplex::with_val(prec, re, im);
            let m = assemble(&basis, &ModelParams::new(lam.clone()).unwrap(), &ctx).unwrap();
            let p = char_poly(m.entries(), &ctx).unwrap();
            match complex_roots(&p, &ctx) {
                Ok(roots) => {
                    let mut gap: Option<(Float, usize, usize)> = None;
                    for i in 0..roots.len() {
                        for j in i+1..roots.len() {
                            let g = (roots[i].clone() - &roots[j]).magnitude();
                            if gap.as_ref().map_or(true, |(b,_,_)| g < *b) { gap = Some((g, i, j)); }
                        }
                    }
                    let (g, i, j) = gap.unwrap();
                    if g < best.0 {
                        let mid = (roots[i].clone() + &roots[j]) * &BigComplex::with_val(prec, 0.5, 0.0);
                        best = (g.clone(), lam.clone(), mid);
                    }
                }
                Err(e) => println!("DK failed at ({re:.2},{im:.2}): {e}"),
            }
        }
    }
    println!("best gap {:.4e} at lambda = {:.4}+{:.4}i, E mid = {:.4}+{:.4}i",
        best.0.to_f64(), best.1.re().to_f64(), best.1.im().to_f64(),
        best.2.re().to_f64(), best.2.im().to_f64());

    // polish from there
    let h = BigComplex::from_real(ctx.fd_step());
    let two_h = h.clone() + &h;
    let kernel_basis = basis;
    let secular = |e: &BigComplex, lam: &BigComplex| -> gaussosc::Result<BigComplex> {
        let m = assemble(&kernel_basis, &ModelParams::new(lam.clone()).unwrap(), &ctx).unwrap();
        let mut a = m.entries().clone();
        for i in 0..a.dim() { *a.at_mut(i,i) = a.at(i,i).clone() - e; }
        det(&a, &ctx)
    };
    let system = |e: &BigComplex, lam: &BigComplex| -> gaussosc::Result<(BigComplex, BigComplex)> {
        let f = secular(e, lam)?;
        let fp = secular(&(e.clone() + &h), lam)?;
        let fm = secular(&(e.clone() - &h), lam)?;
        Ok((f, (fp - &fm) / &two_h))
    };
    for opts in [NewtonOptions::default(), NewtonOptions { accept_stagnation: true }] {
        match newton_2d_with(system, None, (&best.2, &best.1), &ctx, opts) {
            Ok(out) => println!("polish ok (stagnation={:?}): lambda = {:.8}+{:.8}i iters={} stagnated={}",
                opts.accept_stagnation, out.y.re().to_f64(), out.y.im().to_f64(), out.iterations, out.stagnated),
            Err(e) => println!("polish failed (stagnation={:?}): {e}", opts.accept_stagnation),
        }
    }
}
