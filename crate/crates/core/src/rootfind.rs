//! Polynomial roots, real-root filtering, isolating intervals and global
//! maximization of `|r(t)|` for rational (and power-product) functions.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{RatFun, UniPoly};
use crate::scalar::{Coeff, Scalar};

pub const MAX_SWEEPS: usize = 200;
pub const STEP_TOL: f64 = 1e-13;
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const CLUSTER_TOL: f64 = 1e-6;
pub const REAL_TOL: f64 = 1e-7;

/// One root (or numeric cluster of roots).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: Scalar,
    pub multiplicity: usize,
    /// `|p(z)| / (||p|| max(1,|z|)^deg)`
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Root>,
}

impl RootSet {
    pub fn count_with_multiplicity(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    pub fn values(&self) -> impl Iterator<Item = Scalar> + '_ {
        self.roots.iter().map(|r| r.value)
    }

    /// Every root repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Scalar> {
        self.roots
            .iter()
            .flat_map(|r| std::iter::repeat(r.value).take(r.multiplicity))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "interval bounds out of order");
        Interval { lo, hi }
    }

    pub fn contains(&self, t: f64) -> bool {
        self.lo <= t && t <= self.hi
    }

    pub fn contains_open(&self, t: f64) -> bool {
        self.lo < t && t < self.hi
    }

    pub fn len(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        other.lo <= self.lo && self.hi <= other.hi
    }
}

/// `p(z)/p'(z)` without overflow for large `|z|`.
fn newton_ratio(c: &[Scalar], z: Scalar) -> Scalar {
    let n = c.len() - 1;
    if z.norm() <= 1.0 {
        let mut p = Scalar::new(0.0, 0.0);
        let mut dp = Scalar::new(0.0, 0.0);
        for &a in c.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        p / dp
    } else {
        // p(z) = z^n q(w), w = 1/z, q(w) = sum c_k w^{n-k}
        let w = Scalar::new(1.0, 0.0) / z;
        let mut q = Scalar::new(0.0, 0.0);
        let mut dq = Scalar::new(0.0, 0.0);
        for &a in c.iter() {
            dq = dq * w + q;
            q = q * w + a;
        }
        z * q / (q * n as f64 - w * dq)
    }
}

fn relative_residual(c: &[Scalar], norm: f64, z: Scalar) -> f64 {
    let p = UniPoly::new(c.to_vec());
    let (m, _) = p.eval_scaled(z);
    // eval_scaled already divides by |z|^n when |z| > 1
    m.norm() / norm
}

/// Starting points from the Newton polygon of `|c_k|`.
fn initial_guesses(c: &[Scalar]) -> Vec<Scalar> {
    let n = c.len() - 1;
    let pts: Vec<(usize, f64)> = c
        .iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > 0.0)
        .map(|(k, a)| (k, a.norm().ln()))
        .collect();
    // upper convex hull (monotone chain)
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 as f64 - a.0 as f64) * (p.1 - a.1) - (b.1 - a.1) * (p.0 as f64 - a.0 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let mut out = Vec::with_capacity(n);
    for (e, win) in hull.windows(2).enumerate() {
        let (i, li) = win[0];
        let (j, lj) = win[1];
        let m = j - i;
        let r = ((li - lj) / m as f64).exp();
        for l in 0..m {
            let ang = 2.0 * PI * l as f64 / m as f64 + 2.0 * PI * e as f64 / n as f64 + 0.4;
            out.push(Scalar::from_polar(r, ang));
        }
    }
    out
}

/// Aberth–Ehrlich iteration on a polynomial with nonzero constant term.
fn aberth(c: &[Scalar]) -> Vec<Scalar> {
    let n = c.len() - 1;
    if n == 1 {
        return vec![-c[0] / c[1]];
    }
    let mut z = initial_guesses(c);
    for _ in 0..MAX_SWEEPS {
        let mut converged = true;
        for i in 0..n {
            let ratio = newton_ratio(c, z[i]);
            let mut s = Scalar::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += Scalar::new(1.0, 0.0) / d;
                    }
                }
            }
            let w = ratio / (Scalar::new(1.0, 0.0) - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                continue;
            }
            z[i] -= w;
            if w.norm() > STEP_TOL * (1.0 + z[i].norm()) {
                converged = false;
            }
        }
        if converged {
            break;
        }
    }
    z
}

/// Groups approximations closer than `CLUSTER_TOL * (1 + |z|)`.
fn cluster(values: &[Scalar]) -> Vec<(Scalar, usize)> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        p[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let tol = CLUSTER_TOL * (1.0 + values[i].norm().max(values[j].norm()));
            if (values[i] - values[j]).norm() <= tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[b.max(a)] = a.min(b);
                }
            }
        }
    }
    let mut groups: Vec<(usize, Scalar, usize)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => {
                g.1 += values[i];
                g.2 += 1;
            }
            None => groups.push((r, values[i], 1)),
        }
    }
    groups.into_iter().map(|(_, s, m)| (s / m as f64, m)).collect()
}

/// All complex roots with multiplicity estimates.
pub fn all_roots<T: Coeff>(p: &UniPoly<T>) -> Result<RootSet> {
    let c: Vec<Scalar> = p.coeffs().iter().map(|c| c.to_complex()).collect();
    if c.len() <= 1 {
        return Ok(RootSet::default());
    }
    let norm = p.inf_norm();
    let zeros = c.iter().take_while(|a| a.norm() == 0.0).count();
    let rest = &c[zeros..];
    let mut values = vec![Scalar::new(0.0, 0.0); zeros];
    if rest.len() > 1 {
        values.extend(aberth(rest));
    }
    let mut roots = Vec::new();
    let mut worst: f64 = 0.0;
    for (v, m) in cluster(&values) {
        let residual = relative_residual(&c, norm, v);
        worst = worst.max(residual);
        roots.push(Root { value: v, multiplicity: m, residual });
    }
    if worst > RESIDUAL_TOL {
        return Err(Error::NoConvergence { max_residual: worst });
    }
    roots.sort_by(|a, b| {
        (a.value.re, a.value.im)
            .partial_cmp(&(b.value.re, b.value.im))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(RootSet { roots })
}

/// Sorted distinct real roots: `|im| <= tol (1 + |re|)`.
pub fn real_roots<T: Coeff>(p: &UniPoly<T>, tol: f64) -> Result<Vec<f64>> {
    let set = all_roots(p)?;
    let mut out: Vec<f64> = set
        .values()
        .filter(|z| z.im.abs() <= tol * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .collect();
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(out)
}

/// Smallest root modulus; `None` when `real_only` and no real root exists.
pub fn min_abs_root<T: Coeff>(p: &UniPoly<T>, real_only: bool) -> Result<Option<f64>> {
    let set = all_roots(p)?;
    let best = set
        .values()
        .filter(|z| !real_only || z.im.abs() <= REAL_TOL * (1.0 + z.re.abs()))
        .map(|z| if real_only { z.re.abs() } else { z.norm() })
        .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v))));
    Ok(best)
}

/// How [`isolating_interval`] sizes its output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsolationMode {
    /// Length `10^-(k+5)` centered at the target.
    Shrinking { k: u32 },
    /// Widest symmetric interval with half-width at most half the distance
    /// to the nearest excluded point, and at most `cap`.
    Separating { cap: f64 },
}

pub fn isolating_interval(target: f64, excluded: &[f64], mode: IsolationMode) -> Interval {
    let half = match mode {
        IsolationMode::Shrinking { k } => 0.5 * 10f64.powi(-(k as i32 + 5)),
        IsolationMode::Separating { cap } => excluded
            .iter()
            .map(|&e| 0.5 * (e - target).abs())
            .fold(cap, f64::min),
    };
    Interval::new(target - half, target + half)
}

/// Maximization domain for [`max_abs_ratfun`].
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Real,
    Interval(Interval),
    /// The real line minus the open intervals (endpoints included).
    Outside(Vec<Interval>),
    /// Closure of the union of the intervals.
    Inside(Vec<Interval>),
}

impl Domain {
    pub fn contains(&self, t: f64) -> bool {
        match self {
            Domain::Real => t.is_finite(),
            Domain::Interval(i) => i.contains(t),
            Domain::Outside(is) => t.is_finite() && !is.iter().any(|i| i.contains_open(t)),
            Domain::Inside(is) => is.iter().any(|i| i.contains(t)),
        }
    }

    fn unbounded(&self) -> bool {
        matches!(self, Domain::Real | Domain::Outside(_))
    }

    fn endpoints(&self) -> Vec<f64> {
        match self {
            Domain::Real => vec![],
            Domain::Interval(i) => vec![i.lo, i.hi],
            Domain::Outside(is) | Domain::Inside(is) => is.iter().flat_map(|i| [i.lo, i.hi]).collect(),
        }
    }

    fn pieces(&self) -> Vec<Interval> {
        match self {
            Domain::Interval(i) => vec![*i],
            Domain::Inside(is) => is.clone(),
            _ => vec![],
        }
    }
}

/// `scale * prod |p_k(t)|^{e_k}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerProduct {
    pub scale: f64,
    pub factors: Vec<(UniPoly, f64)>,
}

impl PowerProduct {
    pub fn from_ratfun(r: &RatFun) -> Self {
        PowerProduct {
            scale: 1.0,
            factors: vec![(r.num().clone(), 1.0), (r.den().clone(), -1.0)],
        }
    }

    pub fn is_identically_zero(&self) -> bool {
        self.scale == 0.0 || self.factors.iter().any(|(p, e)| *e > 0.0 && p.is_zero())
    }

    /// `ln |value|` at `t`; `+inf` at a pole, `-inf` at a zero.
    fn ln_abs(&self, t: f64) -> f64 {
        if self.is_identically_zero() {
            return f64::NEG_INFINITY;
        }
        let mut acc = self.scale.abs().ln();
        for (p, e) in &self.factors {
            let (m, k) = p.eval_scaled(t);
            let l = if k == 0 { m.abs().ln() } else { m.abs().ln() + k as f64 * t.abs().ln() };
            if l == f64::NEG_INFINITY {
                return if *e > 0.0 { f64::NEG_INFINITY } else { f64::INFINITY };
            }
            acc += e * l;
        }
        acc
    }

    pub fn eval_abs(&self, t: f64) -> f64 {
        self.ln_abs(t).exp()
    }

    /// Limit of the absolute value as `t -> +inf` (or `-inf`; the absolute
    /// value has the same limit on both sides).
    pub fn limit_abs(&self) -> f64 {
        if self.is_identically_zero() {
            return 0.0;
        }
        let mut growth = 0.0;
        let mut lead = self.scale.abs();
        for (p, e) in &self.factors {
            let d = p.degree().unwrap_or(0) as f64;
            growth += e * d;
            lead *= p.leading().abs().powf(*e);
        }
        if growth > 1e-12 {
            f64::INFINITY
        } else if growth < -1e-12 {
            0.0
        } else {
            lead
        }
    }

    /// Numerator of the logarithmic derivative:
    /// `sum_k e_k p_k' prod_{j != k} p_j`.
    pub fn critical_numerator(&self) -> UniPoly {
        let mut acc = UniPoly::zero();
        for (k, (pk, ek)) in self.factors.iter().enumerate() {
            if pk.degree().unwrap_or(0) == 0 {
                continue;
            }
            let mut term = pk.derivative().scale_f64(*ek);
            for (j, (pj, _)) in self.factors.iter().enumerate() {
                if j != k {
                    term = &term * pj;
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Real roots of factors with negative exponent.
    pub fn poles(&self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for (p, e) in &self.factors {
            if *e < 0.0 && p.degree().unwrap_or(0) > 0 {
                out.extend(real_roots(p, REAL_TOL)?);
            }
        }
        out.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxResult {
    pub value: f64,
    /// May be `+-inf` when the supremum is the limit at infinity.
    pub argmax: f64,
}

/// Global maximum of `|r(t)|^(1/root_order)` over `domain`.
pub fn max_abs_ratfun(r: &RatFun, domain: &Domain, root_order: u32) -> Result<MaxResult> {
    max_abs_power_product(&PowerProduct::from_ratfun(r), domain, root_order)
}

/// Global maximum of `|g(t)|^(1/root_order)` over `domain`.
///
/// Candidates: real critical points (roots of the log-derivative numerator,
/// Newton polished), domain endpoints, limits at `+-inf`, plus refined local
/// maxima of a dense compactified sample.
pub fn max_abs_power_product(g: &PowerProduct, domain: &Domain, root_order: u32) -> Result<MaxResult> {
    let root = |v: f64| v.powf(1.0 / root_order as f64);
    if g.is_identically_zero() {
        let arg = domain.endpoints().first().copied().unwrap_or(0.0);
        return Ok(MaxResult { value: 0.0, argmax: arg });
    }
    for pole in g.poles()? {
        if domain.contains(pole) {
            return Err(Error::Unbounded);
        }
    }

    let mut best = MaxResult { value: f64::NEG_INFINITY, argmax: f64::NAN };
    let mut consider = |t: f64, v: f64| {
        if v > best.value {
            best = MaxResult { value: v, argmax: t };
        }
    };

    if domain.unbounded() {
        let lim = g.limit_abs();
        if lim.is_infinite() {
            return Err(Error::Unbounded);
        }
        consider(f64::INFINITY, lim);
        consider(f64::NEG_INFINITY, lim);
    }
    for t in domain.endpoints() {
        consider(t, g.eval_abs(t));
    }

    let crit = g.critical_numerator();
    if crit.degree().unwrap_or(0) > 0 {
        let dcrit = crit.derivative();
        for z in all_roots(&crit)?.values() {
            if z.im.abs() > 1e-2 * (1.0 + z.re.abs()) {
                continue;
            }
            let mut t = z.re;
            for _ in 0..5 {
                let d = dcrit.eval(t);
                if d == 0.0 {
                    break;
                }
                let next = t - crit.eval(t) / d;
                if !next.is_finite() || (next - t).abs() > 1e-3 * (1.0 + t.abs()) {
                    break;
                }
                t = next;
            }
            for cand in [t, z.re] {
                if domain.contains(cand) {
                    consider(cand, g.eval_abs(cand));
                }
            }
        }
    }

    for (t, v) in sampled_maxima(g, domain) {
        consider(t, v);
    }

    if !best.value.is_finite() {
        return Err(Error::Unbounded);
    }
    best.value = root(best.value);
    Ok(best)
}

const SAMPLES: usize = 2048;

/// Dense sampling safety net: local maxima of the sampled values refined by
/// golden-section search.
fn sampled_maxima(g: &PowerProduct, domain: &Domain) -> Vec<(f64, f64)> {
    let mut segments: Vec<(f64, f64, bool)> = Vec::new();
    if domain.unbounded() {
        segments.push((-0.5 * PI, 0.5 * PI, true));
    } else {
        segments.extend(domain.pieces().iter().map(|i| (i.lo, i.hi, false)));
    }
    let mut out = Vec::new();
    for (lo, hi, tangent) in segments {
        let map = |u: f64| if tangent { u.tan() } else { u };
        let n = if tangent { SAMPLES } else { SAMPLES / 4 };
        let us: Vec<f64> = (0..=n).map(|k| lo + (hi - lo) * k as f64 / n as f64).collect();
        let vals: Vec<f64> = us
            .iter()
            .map(|&u| {
                let t = map(u);
                if t.is_finite() && domain.contains(t) {
                    g.eval_abs(t)
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let mut peaks: Vec<usize> = (1..n)
            .filter(|&k| vals[k].is_finite() && vals[k] >= vals[k - 1] && vals[k] >= vals[k + 1])
            .collect();
        peaks.sort_by(|&a, &b| vals[b].partial_cmp(&vals[a]).unwrap());
        peaks.truncate(12);
        for k in peaks {
            let (mut a, mut b) = (us[k - 1], us[k + 1]);
            let f = |u: f64| {
                let t = map(u);
                if domain.contains(t) {
                    g.eval_abs(t)
                } else {
                    f64::NEG_INFINITY
                }
            };
            let gr = 0.5 * (5f64.sqrt() - 1.0);
            let mut c = b - gr * (b - a);
            let mut d = a + gr * (b - a);
            let (mut fc, mut fd) = (f(c), f(d));
            for _ in 0..80 {
                if fc > fd {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - gr * (b - a);
                    fc = f(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + gr * (b - a);
                    fd = f(d);
                }
            }
            let (u, v) = if fc > fd { (c, fc) } else { (d, fd) };
            if v > vals[k] {
                out.push((map(u), v));
            } else {
                out.push((map(us[k]), vals[k]));
            }
        }
        for (k, &v) in vals.iter().enumerate() {
            if v.is_finite() && (k == 0 || k == n) {
                out.push((map(us[k]), v));
            }
        }
    }
    out
}
