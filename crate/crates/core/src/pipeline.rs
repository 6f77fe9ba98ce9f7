//! Batch commands behind the `approxparam` binary: family generation,
//! parametrization, analysis and the whole-family suite.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::familygen::{generate_family, FamilyMember, FamilySpec, MemberStatus};
use crate::hausdorff::{analyze, AnalysisConfig, DistanceReport, FALLBACK_H, LIMIT_SAMPLES};
use crate::io::{curve_to_string, manifest_to_string, param_to_string, read_curve, read_param, write_atomic};
use crate::paramalg::{approx_parametrize, implicit_gap, implicitize, residual, Parametrization};
use crate::poly::BiPoly;
use crate::report::{summary_line, to_csv, write_reports};

pub const MANIFEST: &str = "manifest.txt";
pub const SUITE_TABLE: &str = "suite.csv";

/// Parameters shared by every command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub epsilon: f64,
    pub seed: u64,
    pub stop_eps: f64,
    pub tau_cap: u32,
    pub samples: usize,
    pub out: PathBuf,
    pub zero_perturbation: bool,
    pub h0: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            epsilon: 0.01,
            seed: 0,
            stop_eps: 1e-3,
            tau_cap: 200,
            samples: 1000,
            out: PathBuf::from("out"),
            zero_perturbation: false,
            h0: FALLBACK_H.to_vec(),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let ok = self.epsilon > 0.0 && self.stop_eps > 0.0 && self.tau_cap > 0 && self.samples > 0;
        if ok {
            Ok(())
        } else {
            Err(Error::Parse("epsilon, stop-eps, tau-cap and samples must be positive".into()))
        }
    }

    pub fn analysis(&self) -> AnalysisConfig {
        AnalysisConfig {
            stop_eps: self.stop_eps,
            tau_cap: self.tau_cap,
            h0: self.h0.clone(),
            limit_samples: LIMIT_SAMPLES,
            samples: self.samples,
        }
    }

    pub fn family_spec(&self) -> FamilySpec {
        FamilySpec { epsilon: self.epsilon, zero_perturbation: self.zero_perturbation, ..FamilySpec::new(self.seed) }
    }
}

/// Process exit status for a failed command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotEpsRational => 2,
        Error::Degenerate | Error::DegenerateParametrization => 3,
        Error::HypothesisFailed(_) => 4,
        Error::Parse(_) | Error::Io(_) | Error::Csv(_) | Error::Json(_) => 1,
        _ => 5,
    }
}

/// Curve label used in file names and report rows: the file stem without a
/// leading `curve_`.
pub fn curve_id(path: &Path) -> String {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("curve");
    stem.strip_prefix("curve_").unwrap_or(stem).to_string()
}

/// Generates the family and writes the manifest plus one curve file per
/// member.
pub fn gen_family(cfg: &RunConfig) -> Result<Vec<FamilyMember>> {
    cfg.validate()?;
    let members = generate_family(&cfg.family_spec());
    write_atomic(&cfg.out.join(MANIFEST), &manifest_to_string(&members))?;
    for m in &members {
        write_atomic(&cfg.out.join(m.curve_file_name()), &curve_to_string(&m.g))?;
    }
    Ok(members)
}

pub fn rational_count(members: &[FamilyMember]) -> usize {
    members.iter().filter(|m| m.status == MemberStatus::Rational).count()
}

#[derive(Clone, Debug)]
pub struct ParamOutcome {
    pub param: Parametrization,
    pub fbar: BiPoly,
    /// Largest `|f(P(t))|/||f||` on `[-10, 10]` away from poles.
    pub residual: f64,
    /// Coefficient gap between `f` and the implicit equation of `P`.
    pub implicit_gap: f64,
}

/// Parameters closer than this to a pole are left out of the residual.
pub const POLE_EXCLUSION: f64 = 0.01;

pub fn parametrize_curve(f: &BiPoly, cfg: &RunConfig) -> Result<ParamOutcome> {
    let param = approx_parametrize(f, cfg.epsilon)?;
    let fbar = implicitize(&param)?;
    let residual = residual(f, &param, -10.0, 10.0, cfg.samples, POLE_EXCLUSION);
    let implicit_gap = implicit_gap(f, &fbar);
    Ok(ParamOutcome { param, fbar, residual, implicit_gap })
}

pub fn residual_line(o: &ParamOutcome) -> String {
    format!("residual={:e} implicit_gap={:e} poles={}", o.residual, o.implicit_gap, o.param.poles.len())
}

/// Writes `<id>.param` and `<id>.fbar.curve` into the output directory.
pub fn write_param_files(dir: &Path, id: &str, o: &ParamOutcome) -> Result<()> {
    write_atomic(&dir.join(format!("{id}.param")), &param_to_string(&o.param))?;
    write_atomic(&dir.join(format!("{id}.fbar.curve")), &curve_to_string(&o.fbar))
}

pub fn cmd_parametrize(curve: &Path, cfg: &RunConfig) -> Result<ParamOutcome> {
    cfg.validate()?;
    let f = read_curve(curve)?;
    let o = parametrize_curve(&f, cfg)?;
    write_param_files(&cfg.out, &curve_id(curve), &o)?;
    Ok(o)
}

pub fn cmd_analyze(curve: &Path, param: &Path, cfg: &RunConfig) -> Result<DistanceReport> {
    cfg.validate()?;
    let f = read_curve(curve)?;
    let p = read_param(param)?;
    let report = analyze(&f, &p, &cfg.analysis())?;
    write_reports(&cfg.out, &[(curve_id(curve), report.clone())])?;
    Ok(report)
}

/// One row of the suite table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteRow {
    pub i: String,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub m: Option<f64>,
    pub eta: Option<f64>,
    pub m_over_b: Option<f64>,
    pub residual: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub members: Vec<FamilyMember>,
    pub reports: Vec<(String, DistanceReport)>,
    pub rows: Vec<SuiteRow>,
}

fn member_id(m: &FamilyMember) -> String {
    format!("{}_{}", m.i, m.j)
}

/// Family generation followed by parametrization and analysis of every
/// ε-rational member, in parallel. Outputs are ordered by member.
pub fn run_suite(cfg: &RunConfig) -> Result<SuiteOutcome> {
    let members = gen_family(cfg)?;
    let analysis = cfg.analysis();
    let results: Vec<(String, Result<(ParamOutcome, DistanceReport)>)> = members
        .par_iter()
        .filter(|m| m.status == MemberStatus::Rational)
        .map(|m| {
            let run = parametrize_curve(&m.g, cfg).and_then(|o| {
                let r = analyze(&m.g, &o.param, &analysis)?;
                Ok((o, r))
            });
            (member_id(m), run)
        })
        .collect();

    let mut reports = Vec::new();
    let mut rows = Vec::new();
    for (id, run) in results {
        match run {
            Ok((o, r)) => {
                write_param_files(&cfg.out, &id, &o)?;
                rows.push(SuiteRow {
                    i: id.clone(),
                    b: Some(r.bound.b),
                    m: Some(r.lattice.m),
                    eta: r.eta,
                    m_over_b: (r.bound.b > 0.0).then(|| r.lattice.m / r.bound.b),
                    residual: Some(o.residual),
                    error: None,
                });
                reports.push((id, r));
            }
            Err(e) => rows.push(SuiteRow {
                i: id,
                b: None,
                m: None,
                eta: None,
                m_over_b: None,
                residual: None,
                error: Some(e.to_string()),
            }),
        }
    }
    write_reports(&cfg.out, &reports)?;
    write_atomic(&cfg.out.join(SUITE_TABLE), &to_csv(&rows)?)?;
    Ok(SuiteOutcome { members, reports, rows })
}

pub fn suite_summary(s: &SuiteOutcome) -> Vec<String> {
    s.reports.iter().map(|(id, r)| format!("{id}: {}", summary_line(r))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::NotEpsRational), 2);
        assert_eq!(exit_code(&Error::Degenerate), 3);
        assert_eq!(exit_code(&Error::DegenerateParametrization), 3);
        assert_eq!(exit_code(&Error::HypothesisFailed("x".into())), 4);
        assert_eq!(exit_code(&Error::NoConvergence { max_residual: 1.0 }), 5);
    }

    #[test]
    fn ids_from_paths() {
        assert_eq!(curve_id(Path::new("out/curve_3_2.curve")), "3_2");
        assert_eq!(curve_id(Path::new("mine.curve")), "mine");
    }
}
