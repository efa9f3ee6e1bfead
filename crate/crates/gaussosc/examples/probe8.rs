use gaussosc::numerics::{det, newton_2d_with, shared_decimal_digits, BigComplex, NewtonOptions, Scalar};
use gaussosc::oscillator::{ModelParams, Parity, ParityBasis};
use gaussosc::rayleigh_ritz::assemble;
use gaussosc::rpm::{solve_ep, HankelSpec};
use gaussosc::PrecisionCtx;

const L0_RE: &str = "-2.3226516328467993361294340651810891666";
const L0_IM: &str = "2.38626692172532053097268204019404075331";
const MY_RE: &str = "-2.3226516328467705079254099181561752011";
const MY_IM: &str = "2.3862669217253363829656677416711994038";

fn main() {
    let ctx = PrecisionCtx::new(80).unwrap();
    let paper_l = BigComplex::new(ctx.float_from_str(L0_RE).unwrap(), ctx.float_from_str(L0_IM).unwrap());
    let mine_l = BigComplex::new(ctx.float_from_str(MY_RE).unwrap(), ctx.float_from_str(MY_IM).unwrap());
    let seed_e = BigComplex::new(ctx.float_from_str("2.66027586803334714238").unwrap(), ctx.float_from_str("-1.00439145609690736384").unwrap());

    // 1) RPM seeded from the paper's lambda, D = 80
    let spec = HankelSpec::new(80, 0).unwrap();
    let ep = solve_ep(&spec, Parity::Even, (&seed_e, &paper_l), &ctx).unwrap();
    println!("RPM D=80 from paper seed:");
    println!("  lambda re = {}", ep.lambda().re().to_string_radix(10, Some(40)));
    println!("  vs paper re digits = {}", shared_decimal_digits(ep.lambda().re(), paper_l.re()));
    println!("  vs mine  re digits = {}", shared_decimal_digits(ep.lambda().re(), mine_l.re()));
    println!("  vs paper im digits = {}", shared_decimal_digits(ep.lambda().im(), paper_l.im()));
    println!("  vs mine  im digits = {}", shared_decimal_digits(ep.lambda().im(), mine_l.im()));

    // 2) independent RR secular-determinant EP at growing D
    let opts = NewtonOptions { accept_stagnation: true };
    for dim in [20usize, 30, 40] {
        let basis = ParityBasis::new(Parity::Even, dim).unwrap();
        let h = BigComplex::from_real(ctx.fd_step());
        let two_h = h.clone() + &h;
        let secular = |e: &BigComplex, lam: &BigComplex| -> gaussosc::Result<BigComplex> {
            let m = assemble(&basis, &ModelParams::new(lam.clone()).unwrap(), &ctx)?;
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
        match newton_2d_with(system, None, (&seed_e, &mine_l), &ctx, opts) {
            Ok(out) => println!("RR D={dim}: lambda = {}  | vs paper {} digits, vs mine {} digits",
                out.y.re().to_string_radix(10, Some(25)),
                shared_decimal_digits(out.y.re(), paper_l.re()),
                shared_decimal_digits(out.y.re(), mine_l.re())),
            Err(e) => println!("RR D={dim} failed: {e}"),
        }
    }
}
