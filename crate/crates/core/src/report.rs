//! Table-shaped CSV output and per-curve JSON reports.

use std::path::Path;

use serde::Serialize;

use crate::error::Result;
use crate::hausdorff::{DistanceReport, RhoSample};
use crate::io::write_atomic;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundsRow {
    pub i: String,
    #[serde(rename = "B1")]
    pub b1: f64,
    #[serde(rename = "B2")]
    pub b2: f64,
    #[serde(rename = "B")]
    pub b: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DirectionalRow {
    pub i: String,
    pub h0: f64,
    #[serde(rename = "B1")]
    pub b1: Option<f64>,
    #[serde(rename = "B2")]
    pub b2: Option<f64>,
    #[serde(rename = "B")]
    pub b: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LatticeRow {
    pub i: String,
    pub tau1: f64,
    pub tau2: f64,
    pub tau3: f64,
    pub tau4: f64,
    pub m: f64,
    pub m_real: Option<f64>,
    pub eta: Option<f64>,
    pub compact: bool,
    pub truncated: bool,
    pub all_equal: bool,
    pub stop_eps: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EvidenceRow {
    pub i: String,
    pub chi: Option<f64>,
    pub chi1: Option<f64>,
    pub chi2: Option<f64>,
    #[serde(rename = "B2")]
    pub b2: f64,
    pub mu: f64,
    pub nu: f64,
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: Option<f64>,
    pub gamma1_prime: f64,
    pub gamma2_prime: f64,
    pub gamma3_prime: Option<f64>,
    pub anomalies: usize,
    pub fallback_h0: String,
    pub flags: String,
}

pub fn bounds_row(id: &str, r: &DistanceReport) -> BoundsRow {
    BoundsRow { i: id.to_string(), b1: r.bound.b1, b2: r.bound.b2, b: r.bound.b }
}

pub fn directional_rows(id: &str, r: &DistanceReport) -> Vec<DirectionalRow> {
    r.directional
        .iter()
        .map(|d| DirectionalRow {
            i: id.to_string(),
            h0: d.h0,
            b1: d.report.as_ref().map(|b| b.b1),
            b2: d.report.as_ref().map(|b| b.b2),
            b: d.report.as_ref().map(|b| b.b),
            error: d.error.clone(),
        })
        .collect()
}

pub fn lattice_row(id: &str, r: &DistanceReport) -> LatticeRow {
    let l = &r.lattice;
    LatticeRow {
        i: id.to_string(),
        tau1: l.tau[0],
        tau2: l.tau[1],
        tau3: l.tau[2],
        tau4: l.tau[3],
        m: l.m,
        m_real: l.m_real,
        eta: l.eta,
        compact: l.compact,
        truncated: l.truncated,
        all_equal: l.all_equal(),
        stop_eps: l.stop_eps,
    }
}

pub fn evidence_row(id: &str, r: &DistanceReport) -> EvidenceRow {
    let e = &r.evidence;
    let fallbacks: Vec<String> = e
        .sequences
        .iter()
        .filter_map(|s| s.fallback.map(|fb| format!("{:?}@{}", fb.h0, s.target)))
        .collect();
    EvidenceRow {
        i: id.to_string(),
        chi: e.chi,
        chi1: e.chi1,
        chi2: e.chi2,
        b2: r.bound.b2,
        mu: e.mu,
        nu: e.nu,
        gamma1: e.gamma1,
        gamma2: e.gamma2,
        gamma3: e.gamma3,
        gamma1_prime: e.gamma1_prime,
        gamma2_prime: e.gamma2_prime,
        gamma3_prime: e.gamma3_prime,
        anomalies: e.sequences.iter().filter(|s| s.anomaly.is_some()).count(),
        fallback_h0: fallbacks.join(";"),
        flags: e.flags.join(";"),
    }
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// `t,rho1,rho1_real,coefficient_bound` samples for plotting.
pub fn plot_csv(samples: &[RhoSample]) -> Result<String> {
    to_csv(samples)
}

/// The `B=.. m=.. eta=..` summary line.
pub fn summary_line(r: &DistanceReport) -> String {
    let eta = r.eta.map_or("none".to_string(), |e| format!("{e:e}"));
    format!("B={:e} m={:e} eta={}", r.bound.b, r.lattice.m, eta)
}

/// Writes `bounds.csv`, `directional.csv`, `lattice.csv`, `evidence.csv`
/// for all curves, plus `report_<id>.json` and `plot_rho1_<id>.csv` per
/// curve.
pub fn write_reports(dir: &Path, reports: &[(String, DistanceReport)]) -> Result<()> {
    let bounds: Vec<_> = reports.iter().map(|(id, r)| bounds_row(id, r)).collect();
    let directional: Vec<_> = reports.iter().flat_map(|(id, r)| directional_rows(id, r)).collect();
    let lattice: Vec<_> = reports.iter().map(|(id, r)| lattice_row(id, r)).collect();
    let evidence: Vec<_> = reports.iter().map(|(id, r)| evidence_row(id, r)).collect();
    write_atomic(&dir.join("bounds.csv"), &with_header(to_csv(&bounds)?, "i,B1,B2,B"))?;
    write_atomic(&dir.join("directional.csv"), &to_csv(&directional)?)?;
    write_atomic(&dir.join("lattice.csv"), &to_csv(&lattice)?)?;
    write_atomic(&dir.join("evidence.csv"), &to_csv(&evidence)?)?;
    for (id, r) in reports {
        write_atomic(&dir.join(format!("report_{id}.json")), &(serde_json::to_string_pretty(r)? + "\n"))?;
        write_atomic(&dir.join(format!("plot_rho1_{id}.csv")), &plot_csv(&r.samples)?)?;
    }
    Ok(())
}

/// The csv writer emits no header for an empty table.
fn with_header(body: String, header: &str) -> String {
    if body.is_empty() {
        format!("{header}\n")
    } else {
        body
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_header() {
        let row = BoundsRow { i: "1".into(), b1: 0.5, b2: 1.25, b: 1.25 };
        assert_eq!(to_csv(&[row]).unwrap(), "i,B1,B2,B\n1,0.5,1.25,1.25\n");
    }
}
