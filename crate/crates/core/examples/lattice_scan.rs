//! Lattice estimate m for a perturbed member: asymptote pairing, the box
//! [tau1,tau2]x[tau3,tau4] and per-line maxima.

use approx_param::familygen::{generate_family, FamilySpec, MemberStatus};
use approx_param::hausdorff::{asymptotes, lattice_scan, paired_gaps};
use approx_param::paramalg::{approx_parametrize, implicitize};

fn main() -> approx_param::Result<()> {
    let family = generate_family(&FamilySpec::new(1));
    let m = family.iter().find(|m| m.status == MemberStatus::Rational).expect("rational member");
    let p = approx_parametrize(&m.g, 0.01)?;
    let fbar = implicitize(&p)?;

    for a in asymptotes(&m.g)? {
        println!("asymptote dir=({:+.4}, {:+.4}) offset={:+.6}", a.dir.0, a.dir.1, a.offset);
    }
    println!("paired offset gaps: {:?}", paired_gaps(&m.g, &fbar)?);

    let scan = lattice_scan(&m.g, &fbar, 1e-3, 200)?;
    println!("tau = {:?}, compact = {}, truncated = {}", scan.tau, scan.compact, scan.truncated);
    println!("m = {:.6e}  m_real = {:?}  eta = {:?}", scan.m, scan.m_real, scan.eta);
    for line in scan.lines.iter().take(12) {
        println!("  {:?}={:+} points={} m={:?}", line.axis, line.value, line.points, line.m);
    }
    Ok(())
}
