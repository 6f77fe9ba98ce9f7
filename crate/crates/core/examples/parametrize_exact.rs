//! Parametrize the unperturbed rational quartic and check the result by
//! substitution and by implicitization.

use approx_param::familygen::exact_quartic;
use approx_param::paramalg::{implicit_gap, implicitize, parametrize_traced, residual};

fn main() -> approx_param::Result<()> {
    let f = exact_quartic();
    let trace = parametrize_traced(&f, 1e-6)?;
    let p = &trace.param;

    println!("p1(t) = ({:?}) / ({:?})", p.p1.num().coeffs(), p.p1.den().coeffs());
    println!("p2(t) = ({:?}) / ({:?})", p.p2.num().coeffs(), p.p2.den().coeffs());
    println!("real poles: {:?}", p.poles);

    for t in [-2.0, -0.5, 0.0, 0.5, 3.0] {
        let (x, y) = p.eval(t);
        println!("t={t:5.2}  P(t)=({x:+.6}, {y:+.6})  f(P(t))={:+.2e}", f.eval(x, y));
    }

    let fbar = implicitize(p)?;
    println!("max |f(P(t))|/||f|| on [-10,10]: {:.3e}", residual(&f, p, -10.0, 10.0, 1000, 0.01));
    println!("coefficient gap to the implicit equation: {:.3e}", implicit_gap(&f, &fbar));
    Ok(())
}
