use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use approx_param::epsgeo::check_hypotheses;
use approx_param::familygen::exact_quartic;
use approx_param::io::{curve_to_string, parse_manifest, read_curve, read_param};
use approx_param::paramalg::approx_parametrize;
use approx_param::BiPoly;

fn approxparam(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_approxparam"))
        .args(args)
        .arg("--out")
        .arg(out)
        .env_remove("APPROXPARAM_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn summary_values(line: &str) -> Vec<f64> {
    line.split_whitespace()
        .filter_map(|kv| kv.split_once('=').map(|(_, v)| v.parse::<f64>().unwrap_or(f64::INFINITY)))
        .collect()
}

#[test]
fn gen_family_is_deterministic_and_rereadable() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let ra = approxparam(&["gen-family", "--seed", "0"], a.path());
    let rb = approxparam(&["gen-family", "--seed", "0"], b.path());
    assert!(ra.status.success() && rb.status.success());
    assert!(stdout(&ra).starts_with("eps-rational: "));
    let manifest = fs::read(a.path().join("manifest.txt")).unwrap();
    assert_eq!(manifest, fs::read(b.path().join("manifest.txt")).unwrap());

    let entries = parse_manifest(std::str::from_utf8(&manifest).unwrap()).unwrap();
    assert_eq!(entries.len(), 60);
    for e in &entries {
        let g = read_curve(&a.path().join(e.curve_file_name())).unwrap();
        let failed = check_hypotheses(&g, 0.01).failure().map(str::to_string);
        let recorded = match &e.status {
            approx_param::familygen::MemberStatus::HypothesisFailed(r) if r != "numeric_failure" => Some(r.clone()),
            _ => None,
        };
        assert_eq!(failed, recorded, "member {} {}", e.i, e.j);
    }
}

#[test]
fn seed_from_environment() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let via_flag = approxparam(&["gen-family", "--seed", "5"], a.path());
    let via_env = Command::new(env!("CARGO_BIN_EXE_approxparam"))
        .args(["gen-family", "--out"])
        .arg(b.path())
        .env("APPROXPARAM_SEED", "5")
        .output()
        .unwrap();
    assert!(via_flag.status.success() && via_env.status.success());
    assert_eq!(
        fs::read(a.path().join("manifest.txt")).unwrap(),
        fs::read(b.path().join("manifest.txt")).unwrap()
    );
}

#[test]
fn zero_perturbation_writes_unperturbed_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = approxparam(&["gen-family", "--zero-perturbation", "--epsilon", "1e-6"], dir.path());
    assert!(out.status.success());
    let text = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    let entries = parse_manifest(&text).unwrap();
    assert!(entries.iter().all(|e| (e.r1, e.r2, e.r3) == (0, 0, 0)));
    let rational = entries.iter().filter(|e| e.status.to_string() == "rational").count();
    assert!(rational >= 50, "{rational} exact members screened rational");
}

#[test]
fn parametrize_and_analyze_exact_curve() {
    let dir = tempfile::tempdir().unwrap();
    let curve = dir.path().join("curve_exact.curve");
    fs::write(&curve, curve_to_string(&exact_quartic())).unwrap();

    let out = approxparam(&["parametrize", curve.to_str().unwrap(), "--epsilon", "1e-6"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let residual = summary_values(&stdout(&out))[0];
    assert!(residual <= 1e-6, "residual {residual}");

    let param = dir.path().join("exact.param");
    let expected = approx_parametrize(&exact_quartic(), 1e-6).unwrap();
    assert_eq!(read_param(&param).unwrap(), expected);

    let out = approxparam(
        &["analyze", curve.to_str().unwrap(), param.to_str().unwrap(), "--epsilon", "1e-6"],
        dir.path(),
    );
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let line = stdout(&out);
    assert!(line.starts_with("B="));
    assert!(summary_values(&line).iter().all(|v| *v <= 1e-6), "{line}");
    let bounds = fs::read_to_string(dir.path().join("bounds.csv")).unwrap();
    assert_eq!(bounds.lines().next(), Some("i,B1,B2,B"));
    for name in ["lattice.csv", "evidence.csv", "directional.csv", "report_exact.json", "plot_rho1_exact.csv"] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
}

#[test]
fn reducible_input_exits_with_hypothesis_failure() {
    let dir = tempfile::tempdir().unwrap();
    // (x^2 + y^2 - 1)(x - y)(x + 2y)
    let circle = BiPoly::from_terms(&[(2, 0, 1.0), (0, 2, 1.0), (0, 0, -1.0)]);
    let lines = BiPoly::from_terms(&[(2, 0, 1.0), (1, 1, 1.0), (0, 2, -2.0)]);
    let curve = dir.path().join("reducible.curve");
    fs::write(&curve, curve_to_string(&(&circle * &lines))).unwrap();
    let out = approxparam(&["parametrize", curve.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).contains("hypothesis failed"));
}

#[test]
fn non_rational_member_exits_with_status_two() {
    let dir = tempfile::tempdir().unwrap();
    approxparam(&["gen-family"], dir.path());
    let text = fs::read_to_string(dir.path().join("manifest.txt")).unwrap();
    let entry = parse_manifest(&text).unwrap().into_iter().find(|e| e.status.to_string() == "not_rational").unwrap();
    let curve = dir.path().join(entry.curve_file_name());
    let out = approxparam(&["parametrize", curve.to_str().unwrap()], dir.path());
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not (affine) epsilon-rational"));
}

#[test]
fn usage_errors_exit_with_status_one() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(approxparam(&["gen-family", "--bogus"], dir.path()).status.code(), Some(1));
    let missing = dir.path().join("missing.curve");
    assert_eq!(approxparam(&["parametrize", missing.to_str().unwrap()], dir.path()).status.code(), Some(1));
    assert_eq!(approxparam(&["gen-family", "--epsilon", "-1"], dir.path()).status.code(), Some(1));
}
