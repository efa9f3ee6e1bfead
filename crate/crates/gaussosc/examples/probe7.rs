use gaussosc::oscillator::Parity;
use gaussosc::numerics::{shared_decimal_digits, BigComplex};
use gaussosc::rpm::{solve_ep, HankelSpec};
use gaussosc::PrecisionCtx;
use std::time::Instant;

const L0_RE: &str = "-2.3226516328467993361294340651810891666";
const L0_IM: &str = "2.38626692172532053097268204019404075331";

fn main() {
    let ctx = PrecisionCtx::new(60).unwrap();
    let p = ctx.prec_bits();
    let seed_l = BigComplex::new(ctx.float_from_str("-2.322648").unwrap(), ctx.float_from_str("2.386244").unwrap());
    let seed_e = BigComplex::new(ctx.float_from_str("2.660266").unwrap(), ctx.float_from_str("-1.004385").unwrap());
    let exact_re = ctx.float_from_str(L0_RE).unwrap();
    let exact_im = ctx.float_from_str(L0_IM).unwrap();
    let _ = p;
    for dim in [40usize, 50, 60] {
        let t = Instant::now();
        let spec = HankelSpec::new(dim, 0).unwrap();
        let ep = solve_ep(&spec, Parity::Even, (&seed_e, &seed_l), &ctx).unwrap();
        println!("D={dim}: re {} im {} digits vs paper, converged_digits={} ({:?})",
            shared_decimal_digits(ep.lambda().re(), &exact_re),
            shared_decimal_digits(ep.lambda().im(), &exact_im),
            ep.converged_digits(), t.elapsed());
    }
}
