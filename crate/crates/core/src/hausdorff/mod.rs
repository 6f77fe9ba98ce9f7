//! Bounds on the distance between a curve and an approximate
//! parametrization: the normal-line pencil, the bound `B`, asymptotes, the
//! lattice estimate `m` and the numerical evidence around them.

mod asymptote;
mod bound;
mod evidence;
mod lattice;
mod pencil;

pub use asymptote::{asymptotes, eta, paired_gaps, Asymptote, PAIR_TOL};
pub use bound::{bound_b, critical_points, directional_bound, r1, r2, BoundReport, INTERVAL_CAP};
pub use evidence::{
    critical_evidence, limit_evidence, limit_polynomial, sequence_record, Anomaly, EvidenceReport, Fallback,
    LimitEvidence, SequenceRecord, TargetKind, FALLBACK_H, LIMIT_SAMPLES, MAX_K, STABLE_TOL,
};
pub use lattice::{lattice_scan, rho2, Axis, LatticeReport, LineRecord, COMPACT_LINES};
pub use pencil::{directional_pencil, normal_pencil, rho1, unit_direction, Direction, PencilCoeffs, EXACT_TOL};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paramalg::{implicitize, Parametrization};
use crate::poly::BiPoly;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub stop_eps: f64,
    pub tau_cap: u32,
    /// Directions for the sequence fallback and the directional bounds.
    pub h0: Vec<f64>,
    pub limit_samples: u32,
    /// Number of `t` samples in `[-10, 10]` for the plot data.
    pub samples: usize,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { stop_eps: 1e-3, tau_cap: 200, h0: FALLBACK_H.to_vec(), limit_samples: LIMIT_SAMPLES, samples: 1000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionalEntry {
    pub h0: f64,
    pub report: Option<BoundReport>,
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RhoSample {
    pub t: f64,
    pub rho1: Option<f64>,
    pub rho1_real: Option<f64>,
    /// The full minimum over `i = 1..n` of `C(n,i) |A_0/A_i|^(1/i)`.
    pub coefficient_bound: f64,
}

/// Everything computed for one curve and its parametrization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub bound: BoundReport,
    pub directional: Vec<DirectionalEntry>,
    pub lattice: LatticeReport,
    pub evidence: EvidenceReport,
    pub eta: Option<f64>,
    /// Largest sampled value of the full coefficient bound.
    pub coefficient_bound_max: f64,
    pub samples: Vec<RhoSample>,
}

/// `rho_1`, `rho_1^R` and the coefficient bound at `count` midpoints of
/// `[lo, hi]`; parameter poles are skipped.
pub fn sample_rho1(pc: &PencilCoeffs, lo: f64, hi: f64, count: usize) -> Result<Vec<RhoSample>> {
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let t = lo + (hi - lo) * (k as f64 + 0.5) / count as f64;
        let bound = match pc.coefficient_bound(t) {
            Ok(b) => b,
            Err(Error::OutsideDomain(_)) => continue,
            Err(e) => return Err(e),
        };
        out.push(RhoSample { t, rho1: pc.rho(t, false)?, rho1_real: pc.rho(t, true)?, coefficient_bound: bound });
    }
    Ok(out)
}

/// Runs the bound, the directional bounds, the lattice scan against the
/// implicit equation of `p`, and the evidence.
pub fn analyze(f: &BiPoly, p: &Parametrization, cfg: &AnalysisConfig) -> Result<DistanceReport> {
    let pc = normal_pencil(f, p)?;
    let bound = bound_b(&pc)?;
    let directional = cfg
        .h0
        .iter()
        .map(|&h| match directional_bound(f, p, h) {
            Ok(r) => DirectionalEntry { h0: h, report: Some(r), error: None },
            Err(e) => DirectionalEntry { h0: h, report: None, error: Some(e.to_string()) },
        })
        .collect();
    let fbar = implicitize(p)?;
    let lattice = lattice_scan(f, &fbar, cfg.stop_eps, cfg.tau_cap)?;
    let evidence = critical_evidence(f, p, &pc, &bound, &cfg.h0, cfg.limit_samples)?;
    let samples = sample_rho1(&pc, -10.0, 10.0, cfg.samples)?;
    let coefficient_bound_max = samples.iter().map(|s| s.coefficient_bound).fold(0.0, f64::max);
    Ok(DistanceReport { eta: lattice.eta, bound, directional, lattice, evidence, coefficient_bound_max, samples })
}
