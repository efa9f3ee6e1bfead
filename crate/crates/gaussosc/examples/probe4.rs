use gaussosc::oscillator::Parity;
use gaussosc::rpm::{hankel_with_gradients, rpm_work_ctx, HankelSpec};
use gaussosc::numerics::{newton_1d_with, NewtonOptions, shared_decimal_digits};
use gaussosc::{Float, PrecisionCtx};

const L0C: &str = "0.6863528514321362321454266928798709453987143978324894550439671729746007959840101881351645364483292962";
const L1C: &str = "3.3938564542892053249137531899771358228367841679214716395950274391736560573854993368554164090084557542";

fn newton_lam(dim: usize, d: usize, parity: Parity, seed: &Float, ctx: &PrecisionCtx) -> Float {
    let spec = HankelSpec::new(dim, d).unwrap();
    let work = rpm_work_ctx(ctx, dim).unwrap();
    let zero = Float::new(work.prec_bits());
    let seed = Float::with_val(work.prec_bits(), seed);
    let opts = NewtonOptions { accept_stagnation: true };
    newton_1d_with(
        |lam: &Float| Ok(hankel_with_gradients(&spec, parity, &zero, lam, false, false, &work)?.value),
        Some(&|lam: &Float| Ok(hankel_with_gradients(&spec, parity, &zero, lam, false, true, &work)?.d_lambda.unwrap())),
        &seed, &work, opts,
    ).unwrap().root
}

fn main() {
    let ctx = PrecisionCtx::new(160).unwrap();
    for (label, parity, exact_str, seed0) in [
        ("l0c even", Parity::Even, L0C, 0.684),
        ("l1c odd", Parity::Odd, L1C, 3.35),
    ] {
        let exact = ctx.float_from_str(exact_str).unwrap();
        println!("=== {label}: fine ladder step 5, with d ping-pong at each rung ===");
        let mut r = ctx.float(seed0);
        for dim in (10..=60).step_by(5) {
            let r0 = newton_lam(dim, 0, parity, &r, &ctx);
            let r1 = newton_lam(dim, 1, parity, &r0, &ctx);
            let r2 = newton_lam(dim, 0, parity, &r1, &ctx);
            let r3 = newton_lam(dim, 1, parity, &r2, &ctx);
            println!("  D={dim:3}: d0 {}  pp1 {}  pp2 {}  pp3 {} | d0-d1 agree {}",
                shared_decimal_digits(&r0, &exact),
                shared_decimal_digits(&r1, &exact),
                shared_decimal_digits(&r2, &exact),
                shared_decimal_digits(&r3, &exact),
                shared_decimal_digits(&r2, &r3));
            r = r3;
        }
    }
}
