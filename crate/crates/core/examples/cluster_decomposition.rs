//! Epsilon-singularities of the exact quartic, their clusters and the genus
//! test, then the same for a perturbed copy.

use approx_param::epsgeo::{check_hypotheses, cluster_decompose, find_eps_singularities, is_eps_rational};
use approx_param::familygen::{base_system, exact_quartic, perturb};
use approx_param::BiPoly;

fn report(name: &str, f: &BiPoly, eps: f64) -> approx_param::Result<()> {
    println!("== {name} (eps = {eps:e})");
    println!("hypotheses: {:?}", check_hypotheses(f, eps));
    let sings = find_eps_singularities(f, eps)?;
    println!("{} eps-singularities", sings.len());
    let clusters = cluster_decompose(&sings);
    for c in &clusters {
        println!(
            "  cluster rep=({:.6}, {:.6}) r={} members={} radius={:.2e}",
            c.rep.a.re,
            c.rep.b.re,
            c.r,
            c.members.len(),
            c.radius
        );
    }
    println!("eps-rational: {}", is_eps_rational(f.total_degree(), &clusters));
    Ok(())
}

fn main() -> approx_param::Result<()> {
    report("exact quartic", &exact_quartic(), 1e-6)?;

    let g = base_system().at(&[1.0; 6]);
    // r1, r2, r3 are the integers scaling the cubic, quadratic and linear
    // perturbation terms
    let perturbed = perturb(&g, 40, 17, 93, 0.01);
    report("perturbed quartic", &perturbed, 0.01)
}
