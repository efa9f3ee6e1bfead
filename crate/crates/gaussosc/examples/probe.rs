use gaussosc::oscillator::Parity;
use gaussosc::rpm::{solve_critical_lambda, HankelSpec};
use gaussosc::numerics::shared_decimal_digits;
use gaussosc::PrecisionCtx;
use std::time::Instant;

const L0C: &str = "0.6863528514321362321454266928798709453987143978324894550439671729746007959840101881351645364483292962";
const L1C: &str = "3.3938564542892053249137531899771358228367841679214716395950274391736560573854993368554164090084557542";

fn main() {
    let ctx = PrecisionCtx::new(50).unwrap();
    let exact0 = ctx.float_from_str(L0C).unwrap();
    let exact1 = ctx.float_from_str(L1C).unwrap();

    for d in [0usize, 1] {
        println!("=== displacement d = {d}, lambda_0^c (even) ===");
        let t0 = Instant::now();
        let spec = HankelSpec::new(60, d).unwrap();
        match solve_critical_lambda(&spec, Parity::Even, &ctx.float(0.684), &ctx) {
            Ok(out) => {
                for (dim, val) in &out.ladder {
                    let digits = shared_decimal_digits(val, &exact0);
                    println!("D = {dim:3}  matches exact to {digits} digits");
                }
                println!("converged_digits (ladder) = {}, elapsed {:?}", out.converged_digits, t0.elapsed());
            }
            Err(e) => println!("FAILED: {e}"),
        }
    }

    println!("=== displacement d = 0, lambda_1^c (odd) ===");
    let t0 = Instant::now();
    let spec = HankelSpec::new(60, 0).unwrap();
    match solve_critical_lambda(&spec, Parity::Odd, &ctx.float(3.35), &ctx) {
        Ok(out) => {
            for (dim, val) in &out.ladder {
                let digits = shared_decimal_digits(val, &exact1);
                println!("D = {dim:3}  matches exact to {digits} digits");
            }
            println!("converged_digits (ladder) = {}, elapsed {:?}", out.converged_digits, t0.elapsed());
        }
        Err(e) => println!("FAILED: {e}"),
    }
}
