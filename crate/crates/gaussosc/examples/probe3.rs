use gaussosc::oscillator::Parity;
use gaussosc::rpm::{hankel, rpm_work_ctx, HankelSpec};
use gaussosc::{Float, PrecisionCtx};

const L0C: &str = "0.6863528514321362321454266928798709453987143978324894550439671729746007959840101881351645364483292962";
const L1C: &str = "3.3938564542892053249137531899771358228367841679214716395950274391736560573854993368554164090084557542";

fn main() {
    let ctx = PrecisionCtx::new(200).unwrap();
    for (label, parity, exact_str) in [("l0c even", Parity::Even, L0C), ("l1c odd", Parity::Odd, L1C)] {
        for dim in [40usize, 60] {
            let spec = HankelSpec::new(dim, 0).unwrap();
            let work = rpm_work_ctx(&ctx, dim).unwrap();
            let prec = work.prec_bits();
            let exact = Float::with_val(prec, ctx.float_from_str(exact_str).unwrap());
            let zero = Float::new(prec);
            println!("=== {label} D={dim}: sign pattern of H at exact + t ===");
            // walk t from -1e-8 to -1e-40 and +1e-40 to +1e-8 in decade steps
            let mut last_sign = 0i32;
            for side in [-1f64, 1f64] {
                for e in (8..=40).rev() {
                    let t = work.pow10(-e) * side;
                    let lam = exact.clone() + &t;
                    let h = hankel(&spec, parity, &zero, &lam, &work).unwrap();
                    let s = if h.is_sign_positive() { 1 } else { -1 };
                    if s != last_sign {
                        println!("  sign {s:+} first seen at t = {side}e-{e}  |H| = {:.3e}", h.to_f64());
                        last_sign = s;
                    }
                }
            }
        }
    }
}
