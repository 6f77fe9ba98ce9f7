//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::time::{Duration, Instant};

use approx_param::epsgeo::{binary_form_roots, cluster_decompose, find_eps_singularities, is_eps_rational, proj_dist};
use approx_param::familygen::{exact_quartic, generate_family, FamilySpec, MemberStatus};
use approx_param::hausdorff::{analyze, bound_b, normal_pencil, paired_gaps, AnalysisConfig};
use approx_param::io::{curve_to_string, write_atomic};
use approx_param::paramalg::{approx_parametrize, implicit_gap, implicitize, residual};
use approx_param::pipeline::{cmd_analyze, cmd_parametrize, run_suite, RunConfig, SuiteOutcome};
use approx_param::BiPoly;
use common::rho1_oracle;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn within(elapsed: Duration, secs: u64) -> bool {
    elapsed <= Duration::from_secs(secs)
}

fn exact_round_trip() -> Outcome {
    let start = Instant::now();
    let f = exact_quartic();
    let p = match approx_parametrize(&f, 1e-6) {
        Ok(p) => p,
        Err(e) => return outcome(false, format!("parametrization failed: {e}")),
    };
    let res = residual(&f, &p, -10.0, 10.0, 1000, 0.01);
    let res_all = residual(&f, &p, -10.0, 10.0, 1000, 0.0);
    let gap = implicitize(&p).map(|g| implicit_gap(&f, &g)).unwrap_or(f64::INFINITY);
    let elapsed = start.elapsed();
    outcome(
        res <= 1e-6 && gap <= 1e-6 && within(elapsed, 10),
        format!(
            "residual {res:.2e} (no pole exclusion {res_all:.2e}), implicit gap {gap:.2e}, {:.2?}",
            elapsed
        ),
    )
}

fn cluster_genus() -> Outcome {
    let start = Instant::now();
    let f = exact_quartic();
    let clusters = match find_eps_singularities(&f, 1e-6) {
        Ok(s) => cluster_decompose(&s),
        Err(e) => return outcome(false, e.to_string()),
    };
    let expected = [(2.0, 0.0), (0.0, 0.0), (1.0, 1.0)];
    let reps_ok = expected.iter().all(|&(a, b)| {
        clusters.iter().any(|c| c.r == 2 && (c.rep.a.re - a).hypot(c.rep.b.re - b) <= 1e-6 && c.rep.is_real(1e-6))
    });
    let rational = is_eps_rational(4, &clusters);
    let elapsed = start.elapsed();
    outcome(
        clusters.len() == 3 && reps_ok && rational && within(elapsed, 5),
        format!("{} clusters, reps matched {reps_ok}, eps-rational {rational}, {:.2?}", clusters.len(), elapsed),
    )
}

fn bound_soundness() -> Outcome {
    let start = Instant::now();
    let family = generate_family(&FamilySpec::new(0));
    let mut members = 0;
    let mut samples = 0;
    let mut violations = 0;
    let mut disagreements = 0;
    for m in family.iter().filter(|m| m.status == MemberStatus::Rational) {
        let Ok(p) = approx_parametrize(&m.g, 0.01) else { continue };
        let Ok(pc) = normal_pencil(&m.g, &p) else { continue };
        let Ok(b) = bound_b(&pc) else { continue };
        members += 1;
        for k in 0..1000 {
            let t = -10.0 + 20.0 * (k as f64 + 0.5) / 1000.0;
            let Ok(cb) = pc.coefficient_bound(t) else { continue };
            let oracle = rho1_oracle(&m.g, &p, t);
            let ours = pc.rho(t, false).ok().flatten().unwrap_or(f64::NAN);
            samples += 1;
            if oracle > cb.min(b.b) + 1e-9 {
                violations += 1;
            }
            if (ours - oracle).abs() > 1e-6 * (1.0 + oracle) {
                disagreements += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        members >= 5 && violations == 0 && within(elapsed, 60),
        format!(
            "{members} members, {samples} samples, {violations} violations, {disagreements} rho1/oracle disagreements, {:.2?}",
            elapsed
        ),
    )
}

fn exact_collapse() -> Outcome {
    let start = Instant::now();
    let f = exact_quartic();
    let r = match approx_parametrize(&f, 1e-6).and_then(|p| analyze(&f, &p, &AnalysisConfig::default())) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let e = &r.evidence;
    let values = [
        ("B", Some(r.bound.b)),
        ("m", Some(r.lattice.m)),
        ("eta", r.eta),
        ("chi", e.chi),
        ("chi1", e.chi1),
        ("chi2", e.chi2),
        ("mu", Some(e.mu)),
        ("nu", Some(e.nu)),
        ("gamma1", Some(e.gamma1)),
        ("gamma2", Some(e.gamma2)),
        ("gamma3", e.gamma3),
    ];
    let worst = values.iter().filter_map(|(n, v)| v.map(|v| (n, v))).fold(("", 0.0f64), |acc, (n, v)| {
        if v.abs() > acc.1 {
            (n, v.abs())
        } else {
            acc
        }
    });
    let elapsed = start.elapsed();
    outcome(
        worst.1 <= 1e-6 && within(elapsed, 30),
        format!("largest quantity {}={:.2e}, {:.2?}", worst.0, worst.1, elapsed),
    )
}

fn infinity_match(f: &BiPoly, g: &BiPoly) -> Option<f64> {
    let a = binary_form_roots(&f.leading_form(), 4).ok()?;
    let b = binary_form_roots(&g.leading_form(), 4).ok()?;
    Some(a.iter().map(|p| b.iter().map(|q| proj_dist(*p, *q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max))
}

fn structure(suite: &SuiteOutcome) -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for m in suite.members.iter().filter(|m| m.status == MemberStatus::Rational) {
        let id = format!("{}_{}", m.i, m.j);
        let fbar = match approx_parametrize(&m.g, 0.01).and_then(|p| implicitize(&p)) {
            Ok(f) => f,
            Err(e) => {
                failures.push(format!("{id}: {e}"));
                continue;
            }
        };
        checked += 1;
        if fbar.total_degree() != 4 {
            failures.push(format!("{id}: degree {}", fbar.total_degree()));
        }
        match infinity_match(&m.g, &fbar) {
            Some(d) if d <= 1e-3 => worst = worst.max(d),
            other => failures.push(format!("{id}: infinity directions {other:?}")),
        }
        if let Err(e) = paired_gaps(&m.g, &fbar) {
            failures.push(format!("{id}: {e}"));
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && checked > 0 && within(elapsed, 120),
        format!("{checked} members, worst direction gap {worst:.2e}, failures {failures:?}, {:.2?}", elapsed),
    )
}

fn headline(suite: &SuiteOutcome, elapsed: Duration) -> Outcome {
    let total = suite.members.len();
    let rational = suite.members.iter().filter(|m| m.status == MemberStatus::Rational).count();
    let fraction = rational as f64 / total as f64;
    println!("    {:>6} {:>12} {:>12} {:>8}", "i", "B", "m", "m/B");
    let mut ok = true;
    for row in &suite.rows {
        match (row.b, row.m) {
            (Some(b), Some(m)) => {
                let good = b.is_finite() && m <= b && m <= 0.5 * b;
                ok &= good;
                println!("    {:>6} {:>12.4e} {:>12.4e} {:>8.4}{}", row.i, b, m, m / b, if good { "" } else { "  <-" });
            }
            _ => {
                ok = false;
                println!("    {:>6} error: {}", row.i, row.error.as_deref().unwrap_or("?"));
            }
        }
    }
    let in_range = (0.2..=0.8).contains(&fraction);
    outcome(
        ok && in_range && rational == suite.rows.len() && within(elapsed, 600),
        format!("{rational}/{total} eps-rational ({fraction:.3}), every member B finite and m <= B/2: {ok}, {:.2?}", elapsed),
    )
}

fn oracle_suites() -> Outcome {
    let start = Instant::now();
    let res = common::resultant_suite(100, 7);
    let euc = common::euclid_suite(1000, 8);
    let roots = common::roots_suite(100, 9);
    let max = common::maxabs_suite(20, 10);
    let elapsed = start.elapsed();
    outcome(
        res <= 1e-8 && euc <= 1e-10 && roots <= 1e-8 && max <= 1e-6 && within(elapsed, 60),
        format!("resultant {res:.1e}, euclid {euc:.1e}, roots {roots:.1e}, max_abs {max:.1e}, {:.2?}", elapsed),
    )
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    for entry in fs::read_dir(dir).expect("output directory exists") {
        let path = entry.expect("readable entry").path();
        if path.is_file() {
            out.insert(path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap());
        }
    }
    out
}

fn exact_files(dir: &Path) -> approx_param::Result<()> {
    let cfg = RunConfig { epsilon: 1e-6, out: dir.to_path_buf(), ..RunConfig::default() };
    let curve = dir.join("curve_exact.curve");
    write_atomic(&curve, &curve_to_string(&exact_quartic()))?;
    cmd_parametrize(&curve, &cfg)?;
    cmd_analyze(&curve, &dir.join("exact.param"), &cfg)?;
    Ok(())
}

fn determinism(first: &Path) -> Outcome {
    let second = tempfile::tempdir().expect("temporary directory");
    let cfg = RunConfig { out: second.path().to_path_buf(), ..RunConfig::default() };
    let (exact_a, exact_b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let runs = run_suite(&cfg)
        .and_then(|_| exact_files(exact_a.path()))
        .and_then(|_| exact_files(exact_b.path()));
    if let Err(e) = runs {
        return outcome(false, e.to_string());
    }
    let (a, b) = (snapshot(first), snapshot(second.path()));
    let (ea, eb) = (snapshot(exact_a.path()), snapshot(exact_b.path()));
    let differing: Vec<&String> = a.keys().chain(b.keys()).filter(|k| a.get(*k) != b.get(*k)).collect();
    let exact_same = ea == eb;
    outcome(
        differing.is_empty() && exact_same && !a.is_empty(),
        format!("{} family files, {} exact files compared; differing {differing:?}", a.len(), ea.len()),
    )
}

fn main() {
    let dir = tempfile::tempdir().expect("temporary directory");
    let suite_start = Instant::now();
    let suite = run_suite(&RunConfig { out: dir.path().to_path_buf(), ..RunConfig::default() });
    let suite_elapsed = suite_start.elapsed();

    let mut results = vec![
        ("1 exact-curve round trip", exact_round_trip()),
        ("2 cluster/genus correctness", cluster_genus()),
        ("3 bound soundness", bound_soundness()),
        ("4 exact-input collapse", exact_collapse()),
    ];
    match &suite {
        Ok(s) => {
            results.push(("5 structure preservation", structure(s)));
            results.push(("6 qualitative headline numbers", headline(s, suite_elapsed)));
        }
        Err(e) => {
            results.push(("5 structure preservation", outcome(false, format!("suite failed: {e}"))));
            results.push(("6 qualitative headline numbers", outcome(false, format!("suite failed: {e}"))));
        }
    }
    results.push(("7 oracle suites", oracle_suites()));
    results.push(("8 determinism", determinism(dir.path())));

    let mut failed = 0;
    for (name, o) in &results {
        println!("criterion {name}: {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all {} acceptance criteria passed", results.len());
}
