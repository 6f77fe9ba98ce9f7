//! Full analysis of one member: limit polynomial, endpoint values and the
//! stabilizing sequences near poles and critical points.

use approx_param::familygen::{generate_family, FamilySpec, MemberStatus};
use approx_param::hausdorff::{analyze, AnalysisConfig};
use approx_param::paramalg::approx_parametrize;
use approx_param::report::summary_line;

fn main() -> approx_param::Result<()> {
    let family = generate_family(&FamilySpec::new(2));
    let m = family.iter().find(|m| m.status == MemberStatus::Rational).expect("rational member");
    let p = approx_parametrize(&m.g, 0.01)?;
    let r = analyze(&m.g, &p, &AnalysisConfig::default())?;
    let e = &r.evidence;

    println!("{}_{}: {}", m.i, m.j, summary_line(&r));
    println!("chi={:?} chi1={:?} chi2={:?}", e.chi, e.chi1, e.chi2);
    println!("mu={:.4e} nu={:.4e}", e.mu, e.nu);
    println!("gamma1={:.4e} gamma2={:.4e} gamma3={:?}", e.gamma1, e.gamma2, e.gamma3);
    for s in &e.sequences {
        println!(
            "  {:?} at {:+.6}: stable at k={:?}, value {:?}, anomaly {:?}",
            s.kind,
            s.target,
            s.k_stable,
            s.effective(),
            s.anomaly
        );
    }
    if !e.flags.is_empty() {
        println!("flags: {}", e.flags.join(", "));
    }
    Ok(())
}
