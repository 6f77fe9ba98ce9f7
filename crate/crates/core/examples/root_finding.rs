//! Simultaneous root finding, real-root filtering and maximization of a
//! rational function away from its poles.

use approx_param::rootfind::{all_roots, max_abs_ratfun, min_abs_root, real_roots, Domain, Interval, REAL_TOL};
use approx_param::{RatFun, UniPoly};

fn main() -> approx_param::Result<()> {
    let p = UniPoly::from_roots(&[1.0, -2.0, 0.5, 3.0, 3.0]);
    for r in all_roots(&p)?.roots {
        println!("root {:+.12} (x{}) residual {:.1e}", r.value, r.multiplicity, r.residual);
    }

    let q = UniPoly::new(vec![9.0, 0.0, 1.0]);
    println!("s^2+9: real roots {:?}", real_roots(&q, REAL_TOL)?);
    println!("s^2+9: min |root| = {:?}, real only = {:?}", min_abs_root(&q, false)?, min_abs_root(&q, true)?);

    // (t^2 + 1) / (t^2 - 4): poles at +-2
    let r = RatFun::new(UniPoly::new(vec![1.0, 0.0, 1.0]), UniPoly::new(vec![-4.0, 0.0, 1.0]))?;
    let away = Domain::Outside(vec![Interval::new(-2.5, -1.5), Interval::new(1.5, 2.5)]);
    let best = max_abs_ratfun(&r, &away, 1)?;
    println!("max |r| off the poles: {:.6} at t={}", best.value, best.argmax);
    Ok(())
}
