use gaussosc::oscillator::Parity;
use gaussosc::rpm::{hankel_with_gradients, rpm_work_ctx, HankelSpec};
use gaussosc::numerics::{newton_1d_with, NewtonOptions, shared_decimal_digits};
use gaussosc::{Float, PrecisionCtx};

const L0C: &str = "0.6863528514321362321454266928798709453987143978324894550439671729746007959840101881351645364483292962";
const L1C: &str = "3.3938564542892053249137531899771358228367841679214716395950274391736560573854993368554164090084557542";

fn main() {
    let ctx = PrecisionCtx::new(200).unwrap();
    let opts = NewtonOptions { accept_stagnation: true };
    for (label, parity, exact_str) in [("lambda_0^c even", Parity::Even, L0C), ("lambda_1^c odd", Parity::Odd, L1C)] {
        println!("=== {label}: Newton seeded from the exact value ===");
        let exact = ctx.float_from_str(exact_str).unwrap();
        for d in [0usize, 1, 2] {
            for dim in [20usize, 30, 40, 60, 80] {
                let spec = HankelSpec::new(dim, d).unwrap();
                let work = rpm_work_ctx(&ctx, dim).unwrap();
                let zero = Float::new(work.prec_bits());
                let seed = Float::with_val(work.prec_bits(), &exact);
                let out = newton_1d_with(
                    |lam: &Float| Ok(hankel_with_gradients(&spec, parity, &zero, lam, false, false, &work)?.value),
                    Some(&|lam: &Float| Ok(hankel_with_gradients(&spec, parity, &zero, lam, false, true, &work)?.d_lambda.unwrap())),
                    &seed, &work, opts,
                );
                match out {
                    Ok(r) => {
                        let digits = shared_decimal_digits(&r.root, &exact);
                        println!("  d={d} D={dim:3}: nearest root matches exact to {digits} digits (stagnated={}, iters={})", r.stagnated, r.iterations);
                    }
                    Err(e) => println!("  d={d} D={dim:3}: FAILED {e}"),
                }
            }
        }
    }
}
