use gaussosc::oscillator::Parity;
use gaussosc::rayleigh_ritz::{ep_seeds, SearchBox};
use gaussosc::rpm::{solve_ep, HankelSpec};
use gaussosc::numerics::shared_decimal_digits;
use gaussosc::PrecisionCtx;
use std::time::Instant;

const L0_RE: &str = "-2.3226516328467993361294340651810891666";
const L0_IM: &str = "2.38626692172532053097268204019404075331";
const L1_RE: &str = "-0.70816242676853914857694137530919271348";
const L1_IM: &str = "5.287743791236289699512306550846226281";

fn main() {
    let ctx = PrecisionCtx::new(50).unwrap();
    for (label, parity, bx, re_s, im_s) in [
        ("lambda_0^EP even", Parity::Even, SearchBox::new(-4.0, 0.0, 0.0, 4.0).unwrap(), L0_RE, L0_IM),
        ("lambda_1^EP odd", Parity::Odd, SearchBox::new(-2.0, 1.0, 3.0, 7.0).unwrap(), L1_RE, L1_IM),
    ] {
        println!("=== {label} ===");
        let t0 = Instant::now();
        let seeds = ep_seeds(parity, 10, &bx, &ctx).unwrap();
        println!("  {} seed(s) in {:?}", seeds.len(), t0.elapsed());
        for s in &seeds {
            println!("  seed lambda = {:.6} + {:.6}i  E = {:.6} + {:.6}i  branch {:?}",
                s.lambda.re().to_f64(), s.lambda.im().to_f64(),
                s.energy.re().to_f64(), s.energy.im().to_f64(), s.branch);
        }
        let exact_re = ctx.float_from_str(re_s).unwrap();
        let exact_im = ctx.float_from_str(im_s).unwrap();
        if let Some(seed) = seeds.first() {
            let t1 = Instant::now();
            let spec = HankelSpec::new(40, 0).unwrap();
            match solve_ep(&spec, parity, (&seed.energy, &seed.lambda), &ctx) {
                Ok(ep) => {
                    let dre = shared_decimal_digits(ep.lambda().re(), &exact_re);
                    let dim = shared_decimal_digits(ep.lambda().im(), &exact_im);
                    println!("  solve_ep D=40: re matches {dre} digits, im matches {dim} digits, converged={} ({:?})",
                        ep.converged_digits(), t1.elapsed());
                    println!("  lambda = {}", ep.lambda());
                    println!("  |lambda| = {}", ep.modulus().to_string_radix(10, Some(15)));
                    println!("  E = {}", ep.energy());
                    println!("  residuals rel = ({:.2e}, {:.2e})", ep.residuals().0.to_f64(), ep.residuals().1.to_f64());
                }
                Err(e) => println!("  solve_ep FAILED: {e}"),
            }
        }
    }
}
