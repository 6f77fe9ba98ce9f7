use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paramalg::Parametrization;
use crate::poly::{BiPoly, UniPoly};
use crate::rootfind::{
    isolating_interval, max_abs_power_product, real_roots, Domain, Interval, IsolationMode, PowerProduct, REAL_TOL,
};
use crate::scalar::binomial;

use super::pencil::{directional_pencil, PencilCoeffs};

/// Half-width cap of the intervals around the zeros of `A_1`.
pub const INTERVAL_CAP: f64 = 1.0;
const COLLISION_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub b1: f64,
    pub b2: f64,
    pub b: f64,
    pub argmax1: f64,
    pub argmax2: Option<f64>,
    /// Real poles of `R_1`.
    pub alpha: Vec<f64>,
    pub intervals: Vec<Interval>,
    pub h0: Option<f64>,
}

fn push(factors: &mut Vec<(UniPoly, f64)>, p: &UniPoly, e: f64) {
    if e != 0.0 && !(p.degree() == Some(0) && p.coeff(0) == 1.0) {
        factors.push((p.clone(), e));
    }
}

/// `C(n,1) |A_0 / A_1|`.
pub fn r1(pc: &PencilCoeffs) -> PowerProduct {
    let mut factors = Vec::new();
    push(&mut factors, &pc.nums[0], 1.0);
    push(&mut factors, &pc.norm_sq, 0.5);
    push(&mut factors, &pc.nums[1], -1.0);
    push(&mut factors, &pc.w, (pc.w_exps[1] - pc.w_exps[0]) as f64);
    PowerProduct { scale: binomial(pc.n, 1), factors }
}

/// `C(n,2) |A_0 / A_2|^(1/2)`.
pub fn r2(pc: &PencilCoeffs) -> PowerProduct {
    let mut factors = Vec::new();
    push(&mut factors, &pc.nums[0], 0.5);
    push(&mut factors, &pc.norm_sq, 0.5);
    push(&mut factors, &pc.nums[2], -0.5);
    push(&mut factors, &pc.w, 0.5 * (pc.w_exps[2] - pc.w_exps[0]) as f64);
    PowerProduct { scale: binomial(pc.n, 2), factors }
}

/// Real critical points of `g` (zeros of its log-derivative).
pub fn critical_points(g: &PowerProduct) -> Result<Vec<f64>> {
    if g.is_identically_zero() {
        return Ok(vec![]);
    }
    let num = g.critical_numerator();
    if num.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    real_roots(&num.trimmed(1e-14), REAL_TOL)
}

/// `B = max(B_1, B_2)`: `R_1` maximized away from the zeros of `A_1`,
/// `R_2` maximized on small intervals around them.
pub fn bound_b(pc: &PencilCoeffs) -> Result<BoundReport> {
    if pc.n < 2 {
        return Err(Error::DegreeDropped);
    }
    let g1 = r1(pc);
    let g2 = r2(pc);
    let mut alpha = g1.poles()?;
    alpha.dedup_by(|a, b| (*a - *b).abs() <= COLLISION_TOL * (1.0 + b.abs()));
    let beta2 = g2.poles()?;
    for &a in &alpha {
        if beta2.iter().any(|&b| (a - b).abs() <= COLLISION_TOL * (1.0 + a.abs())) {
            return Err(Error::PoleCollision(a));
        }
    }
    let intervals: Vec<Interval> = alpha
        .iter()
        .map(|&a| {
            let excluded: Vec<f64> = alpha.iter().copied().filter(|&o| o != a).chain(beta2.iter().copied()).collect();
            isolating_interval(a, &excluded, IsolationMode::Separating { cap: INTERVAL_CAP })
        })
        .collect();
    let outer = if intervals.is_empty() { Domain::Real } else { Domain::Outside(intervals.clone()) };
    let m1 = max_abs_power_product(&g1, &outer, 1).map_err(unbounded)?;
    let (b2, argmax2) = if intervals.is_empty() {
        (0.0, None)
    } else {
        let m2 = max_abs_power_product(&g2, &Domain::Inside(intervals.clone()), 1).map_err(unbounded)?;
        (m2.value, Some(m2.argmax))
    };
    Ok(BoundReport {
        b1: m1.value,
        b2,
        b: m1.value.max(b2),
        argmax1: m1.argmax,
        argmax2,
        alpha,
        intervals,
        h0: pc.h0,
    })
}

fn unbounded(e: Error) -> Error {
    match e {
        Error::Unbounded => Error::UnboundedBound,
        other => other,
    }
}

/// The bound for lines through `P(t)` with the fixed direction `h0`.
pub fn directional_bound(f: &BiPoly, p: &Parametrization, h0: f64) -> Result<BoundReport> {
    bound_b(&directional_pencil(f, p, h0)?)
}
