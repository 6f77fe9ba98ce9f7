use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{resultant, BiPoly, Var};
use crate::rootfind::{min_abs_root, real_roots, REAL_TOL};

use super::asymptote::{asymptotes, paired_gaps};

/// Lines per axis in the compact case.
pub const COMPACT_LINES: usize = 32;
const SINGULAR_TOL: f64 = 1e-10;

/// Shortest distance from `(a, b)` on `f` along the unit normal of `f` to a
/// root of `fbar` (complex roots unless `real_only`).
pub fn rho2(fbar: &BiPoly, f: &BiPoly, a: f64, b: f64, real_only: bool) -> Result<Option<f64>> {
    let gx = f.partial(1, 0).eval(a, b);
    let gy = f.partial(0, 1).eval(a, b);
    let g = gx.hypot(gy);
    if g <= SINGULAR_TOL * f.inf_norm() {
        return Err(Error::SingularFootpoint);
    }
    let line = fbar.compose_line((a, b), (gx / g, gy / g));
    min_abs_root(&line, real_only)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Axis {
    /// The line `x = value`.
    X,
    /// The line `y = value`.
    Y,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineRecord {
    pub axis: Axis,
    pub value: f64,
    pub points: usize,
    /// Feet skipped because the gradient of `f` vanishes there.
    pub singular: usize,
    pub m: Option<f64>,
    pub m_real: Option<f64>,
    /// Whether complex and real distances agreed at every point.
    pub equal: bool,
    /// Closest approach of a real distance to an asymptote gap.
    pub gap_miss: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub compact: bool,
    /// `[x_lo, x_hi, y_lo, y_hi]`.
    pub tau: [f64; 4],
    pub m: f64,
    pub m_real: Option<f64>,
    pub eta: Option<f64>,
    pub truncated: bool,
    pub stop_eps: f64,
    pub lines: Vec<LineRecord>,
}

impl LatticeReport {
    /// Whether `rho_2 = rho_2^R` held on every scanned line.
    pub fn all_equal(&self) -> bool {
        self.lines.iter().all(|l| l.equal)
    }
}

fn scan_line(f: &BiPoly, fbar: &BiPoly, axis: Axis, value: f64, gaps: &[f64]) -> Result<LineRecord> {
    let var = match axis {
        Axis::X => Var::X,
        Axis::Y => Var::Y,
    };
    let restricted = f.specialize(var, value);
    let feet = if restricted.degree().unwrap_or(0) == 0 { vec![] } else { real_roots(&restricted, REAL_TOL)? };
    let mut rec = LineRecord {
        axis,
        value,
        points: 0,
        singular: 0,
        m: None,
        m_real: None,
        equal: true,
        gap_miss: None,
    };
    for u in feet {
        let (a, b) = match axis {
            Axis::X => (value, u),
            Axis::Y => (u, value),
        };
        let (c, r) = match (rho2(fbar, f, a, b, false), rho2(fbar, f, a, b, true)) {
            (Ok(c), Ok(r)) => (c, r),
            (Err(Error::SingularFootpoint), _) | (_, Err(Error::SingularFootpoint)) => {
                rec.singular += 1;
                continue;
            }
            (Err(e), _) | (_, Err(e)) => return Err(e),
        };
        rec.points += 1;
        if let Some(c) = c {
            rec.m = Some(rec.m.map_or(c, |m| m.max(c)));
        }
        match (c, r) {
            (Some(c), Some(r)) => {
                rec.m_real = Some(rec.m_real.map_or(r, |m| m.max(r)));
                if (c - r).abs() > 1e-9 * (1.0 + r) {
                    rec.equal = false;
                }
                let miss = gaps.iter().map(|g| (r - g).abs()).fold(f64::INFINITY, f64::min);
                if miss.is_finite() {
                    rec.gap_miss = Some(rec.gap_miss.map_or(miss, |m| m.min(miss)));
                }
            }
            _ => rec.equal = false,
        }
    }
    Ok(rec)
}

/// Walks `value = step, 2 step, ...` until the stopping rule holds or the cap
/// is exceeded. Returns the last value and whether the cap was hit. Without
/// an asymptote crossing the lines, the first line missing the curve ends
/// the walk.
fn walk(
    f: &BiPoly,
    fbar: &BiPoly,
    axis: Axis,
    step: i64,
    gaps: &[f64],
    transverse: bool,
    stop_eps: f64,
    tau_cap: u32,
    lines: &mut Vec<LineRecord>,
) -> Result<(f64, bool)> {
    for k in 1..=tau_cap as i64 {
        let value = (step * k) as f64;
        let rec = scan_line(f, fbar, axis, value, gaps)?;
        let stop = rec.gap_miss.is_some_and(|m| m < stop_eps) || (!transverse && rec.points + rec.singular == 0);
        lines.push(rec);
        if stop {
            return Ok((value, false));
        }
    }
    Ok(((step * tau_cap as i64) as f64, true))
}

fn summarize(
    compact: bool,
    tau: [f64; 4],
    eta: Option<f64>,
    truncated: bool,
    stop_eps: f64,
    lines: Vec<LineRecord>,
) -> Result<LatticeReport> {
    if lines.iter().all(|l| l.points == 0) {
        return Err(Error::EmptyCurve);
    }
    let m = lines.iter().filter_map(|l| l.m).fold(0.0, f64::max);
    let m_real = lines.iter().filter_map(|l| l.m_real).reduce(f64::max);
    Ok(LatticeReport { compact, tau, m, m_real, eta, truncated, stop_eps, lines })
}

/// Real extent of the curve along `var`'s partner: the real roots of
/// `Res_var(f, df/dvar)`.
fn extent(f: &BiPoly, var: Var) -> Result<Option<(f64, f64)>> {
    let d = match var {
        Var::X => f.partial(1, 0),
        Var::Y => f.partial(0, 1),
    };
    let r = resultant(f, &d, var)?.trimmed(1e-12);
    if r.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let roots = real_roots(&r, REAL_TOL)?;
    Ok(roots.first().map(|&lo| (lo, *roots.last().unwrap())))
}

fn padded(lo: f64, hi: f64) -> (f64, f64) {
    let pad = (0.1 * (hi - lo)).max(0.1);
    (lo - pad, hi + pad)
}

/// Distance of `fbar` from the real points of `f` sampled on a lattice of
/// axis-parallel lines.
///
/// Non-compact curves: integer lines `x = -1, -2, ...`, `x = 1, 2, ...` and
/// likewise for `y` are walked outward until a real normal distance comes within
/// `stop_eps` of an asymptote gap (or `tau_cap` is reached). Compact curves:
/// a padded bounding box from the tangent resultants, sampled by
/// [`COMPACT_LINES`] lines per axis.
pub fn lattice_scan(f: &BiPoly, fbar: &BiPoly, stop_eps: f64, tau_cap: u32) -> Result<LatticeReport> {
    let gaps = paired_gaps(f, fbar)?;
    let mut lines = Vec::new();
    if gaps.is_empty() {
        let (Some(xs), Some(ys)) = (extent(f, Var::Y)?, extent(f, Var::X)?) else {
            return Err(Error::EmptyCurve);
        };
        let (x0, x1) = padded(xs.0, xs.1);
        let (y0, y1) = padded(ys.0, ys.1);
        for (axis, lo, hi) in [(Axis::X, x0, x1), (Axis::Y, y0, y1)] {
            for k in 0..COMPACT_LINES {
                let v = lo + (k as f64 + 0.5) * (hi - lo) / COMPACT_LINES as f64;
                lines.push(scan_line(f, fbar, axis, v, &gaps)?);
            }
        }
        return summarize(true, [x0, x1, y0, y1], None, false, stop_eps, lines);
    }
    let eta = gaps.iter().copied().reduce(f64::max);
    let asy = asymptotes(f)?;
    let crosses = |axis: Axis| {
        asy.iter().any(|a| match axis {
            Axis::X => a.dir.0.abs() > 1e-9,
            Axis::Y => a.dir.1.abs() > 1e-9,
        })
    };
    let mut tau = [0.0; 4];
    let mut truncated = false;
    for (slot, (axis, step)) in [(Axis::X, -1), (Axis::X, 1), (Axis::Y, -1), (Axis::Y, 1)].into_iter().enumerate() {
        let (v, hit) = walk(f, fbar, axis, step, &gaps, crosses(axis), stop_eps, tau_cap, &mut lines)?;
        tau[slot] = v;
        truncated |= hit;
    }
    summarize(false, tau, eta, truncated, stop_eps, lines)
}
