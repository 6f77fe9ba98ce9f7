//! The bound B for one perturbed family member, next to the directional
//! bounds and a handful of sampled rho_1 values.

use approx_param::familygen::{generate_family, FamilySpec, MemberStatus};
use approx_param::hausdorff::{bound_b, directional_bound, normal_pencil};
use approx_param::paramalg::approx_parametrize;

fn main() -> approx_param::Result<()> {
    let family = generate_family(&FamilySpec::new(0));
    let m = family.iter().find(|m| m.status == MemberStatus::Rational).expect("seed 0 has rational members");
    println!("member {}_{}", m.i, m.j);

    let p = approx_parametrize(&m.g, 0.01)?;
    let pc = normal_pencil(&m.g, &p)?;
    let b = bound_b(&pc)?;
    println!("B1={:.6} (argmax {:.4})  B2={:.6}  B={:.6}", b.b1, b.argmax1, b.b2, b.b);
    println!("R1 poles: {:?}", b.alpha);
    for iv in &b.intervals {
        println!("  isolating [{:.4}, {:.4}]", iv.lo, iv.hi);
    }

    for h in [1.0, -1.0, 0.8, 0.05] {
        match directional_bound(&m.g, &p, h) {
            Ok(r) => println!("h0={h:5.2}: B={:.6}", r.b),
            Err(e) => println!("h0={h:5.2}: {e}"),
        }
    }

    for t in [-5.0, -1.0, 0.3, 2.0, 7.5] {
        let rho = pc.rho(t, false)?.unwrap_or(f64::NAN);
        println!("t={t:5.2}  rho1={rho:.3e}  coefficient bound={:.3e}", pc.coefficient_bound(t)?);
    }
    Ok(())
}
