use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paramalg::Parametrization;
use crate::poly::{BiPoly, UniPoly};
use crate::rootfind::min_abs_root;

use super::bound::{critical_points, r1, r2, BoundReport};
use super::pencil::{directional_pencil, PencilCoeffs};

/// Directions tried, in order, when the normal pencil misbehaves near a
/// target.
pub const FALLBACK_H: [f64; 4] = [1.0, -1.0, 0.8, 0.05];
/// Successive sequence values closer than this count as stable.
pub const STABLE_TOL: f64 = 1e-8;
/// Last sequence index.
pub const MAX_K: u32 = 12;
/// Samples `t = (-10)^k` for `k = 1..=LIMIT_SAMPLES`.
pub const LIMIT_SAMPLES: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TargetKind {
    /// Real pole of `R_1`.
    Alpha,
    /// Real critical point of `R_1`.
    Critical,
    /// Real pole of the parametrization.
    Beta,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Anomaly {
    /// No real intersection at the last sequence points.
    Undefined,
    /// No two consecutive values within [`STABLE_TOL`].
    Unstable,
    /// A complex root is closer than every real one.
    Mismatch { gap: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fallback {
    pub h0: f64,
    pub k_stable: u32,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SequenceRecord {
    pub kind: TargetKind,
    pub target: f64,
    /// Index at which the normal-pencil sequence stabilized.
    pub k_stable: Option<u32>,
    /// Last `rho^R` of the normal pencil.
    pub real: Option<f64>,
    /// Last `rho` of the normal pencil.
    pub complex: Option<f64>,
    pub anomaly: Option<Anomaly>,
    /// First fixed direction that gave a stable real sequence.
    pub fallback: Option<Fallback>,
}

impl SequenceRecord {
    /// The value the sequence contributes to `gamma'`.
    pub fn effective(&self) -> Option<f64> {
        match (self.anomaly, self.fallback) {
            (None, _) => self.real,
            (Some(_), Some(fb)) => Some(fb.value),
            (Some(_), None) => None,
        }
    }

    pub fn fallback_failed(&self) -> bool {
        self.anomaly.is_some() && self.fallback.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitEvidence {
    pub chi: Option<f64>,
    pub chi_complex: Option<f64>,
    pub chi1: Option<f64>,
    pub chi2: Option<f64>,
    /// Samples where `rho != rho^R` or `rho^R` is undefined.
    pub mismatches: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub chi: Option<f64>,
    pub chi_complex: Option<f64>,
    pub chi1: Option<f64>,
    pub chi2: Option<f64>,
    pub mu: f64,
    pub nu: f64,
    /// Maxima over the well-behaved normal-pencil sequences.
    pub gamma1: f64,
    pub gamma2: f64,
    /// `None` when the parametrization has no real pole.
    pub gamma3: Option<f64>,
    /// The same maxima with fallback values included.
    pub gamma1_prime: f64,
    pub gamma2_prime: f64,
    pub gamma3_prime: Option<f64>,
    pub sequences: Vec<SequenceRecord>,
    pub flags: Vec<String>,
}

/// `D(s) = lim_{t -> inf} D(t, s)`, normalized so its largest coefficient
/// has magnitude 1.
pub fn limit_polynomial(pc: &PencilCoeffs) -> Result<UniPoly> {
    let dw = pc.w.degree().unwrap_or(0) as f64;
    let dn = pc.norm_sq.degree().unwrap_or(0) as f64;
    let mut c = Vec::with_capacity(pc.n + 1);
    for (i, num) in pc.nums.iter().enumerate() {
        if num.is_zero() {
            c.push(0.0);
            continue;
        }
        let growth = num.degree().unwrap() as f64 - pc.w_exps[i] as f64 * dw - 0.5 * i as f64 * dn;
        if growth > 1e-9 {
            return Err(Error::NoLimit);
        }
        if growth < -1e-9 {
            c.push(0.0);
        } else {
            let lead = num.leading() / pc.w.leading().powi(pc.w_exps[i]) / pc.norm_sq.leading().sqrt().powi(i as i32);
            c.push(lead);
        }
    }
    let top = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if top == 0.0 {
        return Err(Error::NoLimit);
    }
    Ok(UniPoly::new(c.iter().map(|v| v / top).collect()))
}

/// `chi` (and its complex counterpart) from the limit polynomial; `chi_1`,
/// `chi_2` as the extremes of `rho^R((-10)^k)`, `k = 1..=samples`.
pub fn limit_evidence(pc: &PencilCoeffs, samples: u32) -> Result<LimitEvidence> {
    let d = limit_polynomial(pc)?;
    let (chi, chi_complex) = if d.coeff(0) == 0.0 {
        (Some(0.0), Some(0.0))
    } else {
        (min_abs_root(&d, true)?, min_abs_root(&d, false)?)
    };
    let mut vals = Vec::new();
    let mut mismatches = Vec::new();
    for k in 1..=samples {
        let t = (-10f64).powi(k as i32);
        let (r, c) = match (pc.rho(t, true), pc.rho(t, false)) {
            (Ok(r), Ok(c)) => (r, c),
            (Err(Error::OutsideDomain(_)), _) | (_, Err(Error::OutsideDomain(_))) => continue,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        match (r, c) {
            (Some(r), Some(c)) => {
                vals.push(r);
                if (r - c).abs() > STABLE_TOL {
                    mismatches.push(k);
                }
            }
            _ => mismatches.push(k),
        }
    }
    Ok(LimitEvidence {
        chi,
        chi_complex,
        chi1: vals.iter().copied().reduce(f64::min),
        chi2: vals.iter().copied().reduce(f64::max),
        mismatches,
    })
}

struct Sequence {
    k_stable: Option<u32>,
    real: Option<f64>,
    complex: Option<f64>,
}

/// `rho` at the midpoints `t_k = target + 10^-(k+5) / 2` of the one-sided
/// intervals `J_k = [target, target + 10^-(k+5)]`, `k = 0..=MAX_K`.
fn run_sequence(pc: &PencilCoeffs, target: f64) -> Result<Sequence> {
    let mut prev: Option<f64> = None;
    let mut out = Sequence { k_stable: None, real: None, complex: None };
    for k in 0..=MAX_K {
        let t = target + 0.5 * 10f64.powi(-(k as i32 + 5));
        let (r, c) = match (pc.rho(t, true), pc.rho(t, false)) {
            (Ok(r), Ok(c)) => (r, c),
            (Err(Error::OutsideDomain(_)), _) | (_, Err(Error::OutsideDomain(_))) => (None, None),
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        out.real = r;
        out.complex = c;
        match r {
            Some(v) if prev.is_some_and(|p| (v - p).abs() < STABLE_TOL) => {
                out.k_stable = Some(k);
                return Ok(out);
            }
            _ => prev = r,
        }
    }
    Ok(out)
}

fn classify(s: &Sequence) -> Option<Anomaly> {
    match (s.real, s.complex, s.k_stable) {
        (None, _, _) => Some(Anomaly::Undefined),
        (Some(_), _, None) => Some(Anomaly::Unstable),
        (Some(r), Some(c), Some(_)) if (r - c).abs() > STABLE_TOL => Some(Anomaly::Mismatch { gap: (r - c).abs() }),
        _ => None,
    }
}

/// Runs the sequence towards `target` and, on an anomaly, retries with the
/// fixed directions in `fallback_h`.
pub fn sequence_record(
    f: &BiPoly,
    p: &Parametrization,
    pc: &PencilCoeffs,
    kind: TargetKind,
    target: f64,
    fallback_h: &[f64],
) -> Result<SequenceRecord> {
    let s = run_sequence(pc, target)?;
    let anomaly = classify(&s);
    let mut fallback = None;
    if anomaly.is_some() {
        for &h in fallback_h {
            let alt = run_sequence(&directional_pencil(f, p, h)?, target)?;
            if let (Some(value), Some(k_stable)) = (alt.real, alt.k_stable) {
                fallback = Some(Fallback { h0: h, k_stable, value });
                break;
            }
        }
    }
    Ok(SequenceRecord { kind, target, k_stable: s.k_stable, real: s.real, complex: s.complex, anomaly, fallback })
}

/// Endpoint values `mu`, `nu` and the stabilized sequences at the poles and
/// critical points of `R_1` and at the poles of the parametrization.
pub fn critical_evidence(
    f: &BiPoly,
    p: &Parametrization,
    pc: &PencilCoeffs,
    bound: &BoundReport,
    fallback_h: &[f64],
    samples: u32,
) -> Result<EvidenceReport> {
    let mut flags = Vec::new();
    let limit = match limit_evidence(pc, samples) {
        Ok(l) => Some(l),
        Err(Error::NoLimit) => {
            flags.push("no_limit".to_string());
            None
        }
        Err(e) => return Err(e),
    };
    if let Some(l) = &limit {
        if let (Some(a), Some(b)) = (l.chi, l.chi_complex) {
            if (a - b).abs() > STABLE_TOL {
                flags.push("chi_complex_differs".to_string());
            }
        }
        if !l.mismatches.is_empty() {
            flags.push(format!("limit_samples_mismatch={}", l.mismatches.len()));
        }
    }

    let g2 = r2(pc);
    let (mut mu, mut nu) = (0.0f64, 0.0f64);
    for iv in &bound.intervals {
        for t in [iv.lo, iv.hi] {
            mu = mu.max(g2.eval_abs(t));
            match pc.rho(t, true) {
                Ok(Some(v)) => nu = nu.max(v),
                Ok(None) => flags.push(format!("endpoint_without_real_root={t}")),
                Err(Error::OutsideDomain(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }

    let near_pole = |t: f64| p.poles.iter().any(|b| (t - b).abs() < 1e-9);
    let mut targets: Vec<(TargetKind, f64)> = bound.alpha.iter().map(|&a| (TargetKind::Alpha, a)).collect();
    for c in critical_points(&r1(pc))? {
        if !near_pole(c) {
            targets.push((TargetKind::Critical, c));
        }
    }
    targets.extend(p.poles.iter().map(|&b| (TargetKind::Beta, b)));

    let sequences = targets
        .into_iter()
        .map(|(kind, t)| sequence_record(f, p, pc, kind, t, fallback_h))
        .collect::<Result<Vec<_>>>()?;
    for s in &sequences {
        if let Some(a) = s.anomaly {
            let what = match a {
                Anomaly::Undefined => "undefined".to_string(),
                Anomaly::Unstable => "unstable".to_string(),
                Anomaly::Mismatch { gap } => format!("mismatch(gap={gap:e})"),
            };
            flags.push(format!("{:?}@{}:{}", s.kind, s.target, what));
        }
        if s.fallback_failed() {
            flags.push(format!("no_fallback_works@{}", s.target));
        }
    }
    let plain = |kind| {
        sequences.iter().filter(|s| s.kind == kind && s.anomaly.is_none()).filter_map(|s| s.real).fold(0.0, f64::max)
    };
    let prime = |kind| sequences.iter().filter(|s| s.kind == kind).filter_map(|s| s.effective()).fold(0.0, f64::max);
    let compact = p.poles.is_empty();
    Ok(EvidenceReport {
        chi: limit.as_ref().and_then(|l| l.chi),
        chi_complex: limit.as_ref().and_then(|l| l.chi_complex),
        chi1: limit.as_ref().and_then(|l| l.chi1),
        chi2: limit.as_ref().and_then(|l| l.chi2),
        mu,
        nu,
        gamma1: plain(TargetKind::Alpha),
        gamma2: plain(TargetKind::Critical),
        gamma3: (!compact).then(|| plain(TargetKind::Beta)),
        gamma1_prime: prime(TargetKind::Alpha),
        gamma2_prime: prime(TargetKind::Critical),
        gamma3_prime: (!compact).then(|| prime(TargetKind::Beta)),
        sequences,
        flags,
    })
}
