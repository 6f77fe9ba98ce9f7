//! Epsilon-points, epsilon-singularities and their clusters, the genus
//! test, hypothesis checks and the choice of simple points.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{approx_gcd, resultant, BiPoly, UniPoly, Var};
use crate::rootfind::all_roots;
use crate::scalar::{factorial, Scalar};

/// Point of the projective plane. Affine points have `w = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjPoint {
    pub a: Scalar,
    pub b: Scalar,
    pub w: u8,
}

impl ProjPoint {
    pub fn affine(a: Scalar, b: Scalar) -> Self {
        ProjPoint { a, b, w: 1 }
    }

    pub fn real(a: f64, b: f64) -> Self {
        Self::affine(Scalar::new(a, 0.0), Scalar::new(b, 0.0))
    }

    pub fn is_affine(&self) -> bool {
        self.w == 1
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.a.im.abs() <= tol * (1.0 + self.a.re.abs()) && self.b.im.abs() <= tol * (1.0 + self.b.re.abs())
    }

    pub fn conj(&self) -> Self {
        ProjPoint { a: self.a.conj(), b: self.b.conj(), w: self.w }
    }

    /// `sqrt(|a|^2 + |b|^2)`
    pub fn norm(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr()).sqrt()
    }

    pub fn dist(&self, other: &ProjPoint) -> f64 {
        ((self.a - other.a).norm_sqr() + (self.b - other.b).norm_sqr()).sqrt()
    }

    fn key(&self) -> (f64, f64, f64, f64, f64) {
        (self.norm(), self.a.re, self.a.im, self.b.re, self.b.im)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsSingularity {
    pub point: ProjPoint,
    pub mult: usize,
    pub radius: f64,
}

impl EpsSingularity {
    pub fn overlaps(&self, p: &ProjPoint, radius: f64) -> bool {
        self.point.dist(p) <= self.radius + radius
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsCluster {
    pub rep: ProjPoint,
    pub r: usize,
    pub members: Vec<EpsSingularity>,
    /// Radius of the smallest disk centered at `rep` containing every member disk.
    pub radius: f64,
}

impl EpsCluster {
    pub fn overlaps(&self, p: &ProjPoint, radius: f64) -> bool {
        self.members.iter().any(|m| m.overlaps(p, radius))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveHypotheses {
    pub proper_degree: bool,
    pub eps_irreducible_heuristic: bool,
    pub d_distinct_infinity: bool,
    pub avoids_axes_at_infinity: bool,
}

impl CurveHypotheses {
    pub fn all(&self) -> bool {
        self.proper_degree && self.eps_irreducible_heuristic && self.d_distinct_infinity && self.avoids_axes_at_infinity
    }

    /// Name of the first failing hypothesis.
    pub fn failure(&self) -> Option<&'static str> {
        if !self.proper_degree {
            Some("improper_degree")
        } else if !self.eps_irreducible_heuristic {
            Some("eps_reducible")
        } else if !self.d_distinct_infinity {
            Some("repeated_point_at_infinity")
        } else if !self.avoids_axes_at_infinity {
            Some("axis_point_at_infinity")
        } else {
            None
        }
    }
}

/// Projective distance between `(a1:b1)` and `(a2:b2)`.
pub fn proj_dist(p: (Scalar, Scalar), q: (Scalar, Scalar)) -> f64 {
    let cross = (p.0 * q.1 - p.1 * q.0).norm();
    let np = (p.0.norm_sqr() + p.1.norm_sqr()).sqrt();
    let nq = (q.0.norm_sqr() + q.1.norm_sqr()).sqrt();
    cross / (np * nq)
}

/// Projective roots `(x:y)` of a binary form given as a [`BiPoly`] whose
/// terms all have total degree `deg`. Roots at `(1:0)` appear when the
/// coefficient of `y^deg` is absent. Repeated roots are repeated.
pub fn binary_form_roots(form: &BiPoly, deg: usize) -> Result<Vec<(Scalar, Scalar)>> {
    // form(x, 1) as a polynomial in x
    let p = UniPoly::new((0..=deg).map(|i| form.coeff(i, deg - i)).collect()).trim_leading(1e-10);
    let mut out: Vec<(Scalar, Scalar)> = all_roots(&p)?
        .expanded()
        .into_iter()
        .map(|mu| (mu, Scalar::new(1.0, 0.0)))
        .collect();
    let finite = p.degree().unwrap_or(0);
    out.extend((finite..deg).map(|_| (Scalar::new(1.0, 0.0), Scalar::new(0.0, 0.0))));
    Ok(out)
}

/// Mixed partials `f^v` for `|v| <= order`, grouped by order.
fn partials_upto(f: &BiPoly, order: usize) -> Vec<Vec<BiPoly>> {
    (0..=order)
        .map(|k| (0..=k).map(|i| f.partial(i, k - i)).collect())
        .collect()
}

/// Largest `r >= 1` such that every partial of order `< r` at `p` is at most
/// `eps ||f||` and some partial of order `r` exceeds it; 0 when `p` is not an
/// epsilon-point.
pub fn eps_multiplicity(f: &BiPoly, p: &ProjPoint, eps: f64) -> usize {
    let d = f.total_degree();
    let thr = eps * f.inf_norm();
    for (k, group) in partials_upto(f, d).iter().enumerate() {
        let big = group.iter().any(|g| g.eval(p.a, p.b).norm() > thr);
        if big {
            return k;
        }
    }
    d + 1
}

/// Order-`d` partials are the constants `i! j! c_ij`.
fn has_proper_degree(f: &BiPoly, eps: f64) -> bool {
    let d = f.total_degree();
    let thr = eps * f.inf_norm();
    (0..=d).any(|i| (factorial(i) * factorial(d - i) * f.coeff(i, d - i)).abs() > thr)
}

const LINE_DIR: (f64, f64) = (0.6, 0.8);
const LINE_BASES: [(f64, f64); 2] = [(0.3137, -0.2718), (-0.4521, 0.1729)];

/// Heuristic epsilon-irreducibility: `f` restricted to two fixed lines
/// shares no root with its derivative along them (no repeated factor),
/// and the Gao–Ruppert linear system has a one-dimensional solution space
/// (a single absolutely irreducible factor).
pub fn eps_irreducible_heuristic(f: &BiPoly) -> Result<bool> {
    let mut repeated = true;
    for base in LINE_BASES {
        let line = f.compose_line(base, LINE_DIR);
        let g = approx_gcd(&[line.clone(), line.derivative()], 1e-5)?;
        if g.degree().unwrap_or(0) == 0 {
            repeated = false;
        }
    }
    if repeated {
        return Ok(false);
    }
    Ok(ruppert_nullity(f) == 1)
}

/// Dimension of `{(g, h) : f g_y - g f_y + h f_x - f h_x = 0}` with
/// `bideg g <= (m-1, n)` and `bideg h <= (m, n-1)`.
pub fn ruppert_nullity(f: &BiPoly) -> usize {
    let f = f.scale(1.0 / f.inf_norm());
    let (m, n) = (f.degx(), f.degy());
    if m == 0 || n == 0 {
        return 1;
    }
    let fx = f.partial(1, 0);
    let fy = f.partial(0, 1);
    let rows_x = 2 * m;
    let rows_y = 2 * n;
    let row = |i: usize, j: usize| i * rows_y + j;
    let ng = m * (n + 1);
    let nh = (m + 1) * n;
    let mut a = DMatrix::<f64>::zeros(rows_x * rows_y, ng + nh);
    let mut col = 0;
    let add = |a: &mut DMatrix<f64>, p: &BiPoly, col: usize, sign: f64| {
        for (i, j, c) in p.terms() {
            a[(row(i, j), col)] += sign * c;
        }
    };
    for gi in 0..m {
        for gj in 0..=n {
            let mono = BiPoly::monomial(1.0, gi, gj);
            // f * d/dy(mono) - mono * f_y
            add(&mut a, &(&f * &mono.partial(0, 1)), col, 1.0);
            add(&mut a, &(&mono * &fy), col, -1.0);
            col += 1;
        }
    }
    for hi in 0..=m {
        for hj in 0..n {
            let mono = BiPoly::monomial(1.0, hi, hj);
            // mono * f_x - f * d/dx(mono)
            add(&mut a, &(&mono * &fx), col, 1.0);
            add(&mut a, &(&f * &mono.partial(1, 0)), col, -1.0);
            col += 1;
        }
    }
    let sv = a.svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s <= 1e-6 * smax).count()
}

pub fn check_hypotheses(f: &BiPoly, eps: f64) -> CurveHypotheses {
    let d = f.total_degree();
    let norm = f.inf_norm();
    let avoids = f.coeff(d, 0).abs() > 1e-10 * norm && f.coeff(0, d).abs() > 1e-10 * norm;
    let distinct = match binary_form_roots(&f.leading_form(), d) {
        Ok(roots) => {
            let mut ok = roots.len() == d;
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    if proj_dist(roots[i], roots[j]) <= 1e-6 {
                        ok = false;
                    }
                }
            }
            ok
        }
        Err(_) => false,
    };
    CurveHypotheses {
        proper_degree: has_proper_degree(f, eps),
        eps_irreducible_heuristic: eps_irreducible_heuristic(f).unwrap_or(false),
        d_distinct_infinity: distinct,
        avoids_axes_at_infinity: avoids,
    }
}

/// Newton's method on `(f_x, f_y) = 0` over the complex numbers.
fn polish(fx: &BiPoly, fy: &BiPoly, hess: [&BiPoly; 3], mut p: (Scalar, Scalar)) -> (Scalar, Scalar) {
    for _ in 0..20 {
        let (u, v) = (fx.eval(p.0, p.1), fy.eval(p.0, p.1));
        let (a, b, c) = (hess[0].eval(p.0, p.1), hess[1].eval(p.0, p.1), hess[2].eval(p.0, p.1));
        let det = a * c - b * b;
        if det.norm() == 0.0 {
            break;
        }
        let dx = (c * u - b * v) / det;
        let dy = (a * v - b * u) / det;
        if !(dx.re.is_finite() && dx.im.is_finite() && dy.re.is_finite() && dy.im.is_finite()) {
            break;
        }
        p = (p.0 - dx, p.1 - dy);
        if dx.norm() + dy.norm() <= 1e-15 * (1.0 + p.0.norm() + p.1.norm()) {
            break;
        }
    }
    p
}

fn snap_real(z: Scalar) -> Scalar {
    if z.im.abs() <= 1e-8 * (1.0 + z.re.abs()) {
        Scalar::new(z.re, 0.0)
    } else {
        z
    }
}

/// Candidate x-coordinates of the solutions of `f_x = f_y = 0`.
fn gradient_abscissae(fx: &BiPoly, fy: &BiPoly) -> Result<Vec<Scalar>> {
    let uni_x = |g: &BiPoly| -> Result<Vec<Scalar>> {
        let p = g.specialize(Var::Y, 0.0);
        Ok(all_roots(&p)?.values().collect())
    };
    if fx.is_zero() || fy.is_zero() {
        return Ok(vec![]);
    }
    if fx.degy() == 0 {
        return uni_x(fx);
    }
    if fy.degy() == 0 {
        return uni_x(fy);
    }
    let r = resultant(fx, fy, Var::Y)?;
    if r.is_zero() {
        return Ok(vec![]);
    }
    Ok(all_roots(&r)?.values().collect())
}

/// Epsilon-singularities of `f`: solutions of the gradient system with
/// epsilon-multiplicity at least 2, each with radius `eps^(1/r)`.
pub fn find_eps_singularities(f: &BiPoly, eps: f64) -> Result<Vec<EpsSingularity>> {
    let fx = f.partial(1, 0);
    let fy = f.partial(0, 1);
    let (fxx, fxy, fyy) = (f.partial(2, 0), f.partial(1, 1), f.partial(0, 2));
    let mut cands: Vec<(Scalar, Scalar)> = Vec::new();
    for x0 in gradient_abscissae(&fx, &fy)? {
        for g in [&fx, &fy] {
            let line = g.specialize(Var::X, x0);
            if line.degree().unwrap_or(0) == 0 {
                continue;
            }
            for y0 in all_roots(&line)?.values() {
                let p = polish(&fx, &fy, [&fxx, &fxy, &fyy], (x0, y0));
                let scale = fx.inf_norm().max(fy.inf_norm()) * (1.0 + p.0.norm() + p.1.norm()).powi(f.total_degree() as i32);
                let res = fx.eval(p.0, p.1).norm() + fy.eval(p.0, p.1).norm();
                if res <= 1e-8 * scale {
                    cands.push((snap_real(p.0), snap_real(p.1)));
                }
            }
        }
    }
    // complex candidates are kept in exact conjugate pairs
    let mut canon: Vec<(Scalar, Scalar)> = Vec::new();
    for (a, b) in cands {
        let (a, b) = if a.im < 0.0 || (a.im == 0.0 && b.im < 0.0) { (a.conj(), b.conj()) } else { (a, b) };
        let dup = canon
            .iter()
            .any(|q| ((q.0 - a).norm_sqr() + (q.1 - b).norm_sqr()).sqrt() <= 1e-8 * (1.0 + a.norm() + b.norm()));
        if !dup {
            canon.push((a, b));
        }
    }
    let mut out = Vec::new();
    for (a, b) in canon {
        let mut pts = vec![ProjPoint::affine(a, b)];
        if a.im != 0.0 || b.im != 0.0 {
            pts.push(ProjPoint::affine(a.conj(), b.conj()));
        }
        for p in pts {
            let r = eps_multiplicity(f, &p, eps);
            if r >= 2 {
                out.push(EpsSingularity { point: p, mult: r, radius: eps.powf(1.0 / r as f64) });
            }
        }
    }
    Ok(out)
}

/// Disk-overlap equivalence classes with their canonical representants.
pub fn cluster_decompose(sings: &[EpsSingularity]) -> Vec<EpsCluster> {
    let n = sings.len();
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
            if sings[i].overlaps(&sings[j].point, sings[j].radius) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<(usize, Vec<EpsSingularity>)> = Vec::new();
    for (i, s) in sings.iter().enumerate() {
        let root = find(&mut parent, i);
        match classes.iter_mut().find(|c| c.0 == root) {
            Some(c) => c.1.push(*s),
            None => classes.push((root, vec![*s])),
        }
    }
    let mut out: Vec<EpsCluster> = classes
        .into_iter()
        .map(|(_, members)| {
            let r = members.iter().map(|m| m.mult).max().unwrap_or(0);
            let mut rep = members
                .iter()
                .filter(|m| m.mult == r)
                .map(|m| m.point)
                .min_by(|p, q| p.key().partial_cmp(&q.key()).unwrap())
                .unwrap();
            // a cluster closed under conjugation gets a real representant
            let self_conjugate = members.iter().any(|m| m.point.dist(&rep.conj()) <= 1e-12 * (1.0 + rep.norm()));
            if !rep.is_real(0.0) && self_conjugate {
                rep = ProjPoint::real(rep.a.re, rep.b.re);
            }
            let radius = members.iter().map(|m| m.point.dist(&rep) + m.radius).fold(0.0, f64::max);
            EpsCluster { rep, r, members, radius }
        })
        .collect();
    out.sort_by(|a, b| a.rep.key().partial_cmp(&b.rep.key()).unwrap());
    out
}

/// Genus-zero test `(d-1)(d-2) = sum r_i (r_i - 1)`.
pub fn is_eps_rational(d: usize, clusters: &[EpsCluster]) -> bool {
    let lhs = (d - 1) * (d - 2);
    let rhs: usize = clusters.iter().map(|c| c.r * (c.r - 1)).sum();
    lhs == rhs
}

/// Van der Corput sequence in base 2, scaled to `[-2, 2]`.
pub fn abscissa(k: u32) -> f64 {
    let mut v = 0.0;
    let mut denom = 1.0;
    let mut n = k;
    while n > 0 {
        denom *= 2.0;
        v += (n & 1) as f64 / denom;
        n >>= 1;
    }
    -2.0 + 4.0 * v
}

pub const MAX_ABSCISSAE: u32 = 1000;

/// `count` epsilon-simple points away from `avoid` and from each other.
/// Real points are preferred; a conjugate pair counts as two points.
pub fn simple_eps_points(f: &BiPoly, eps: f64, count: usize, avoid: &[EpsCluster]) -> Result<Vec<ProjPoint>> {
    let mut chosen: Vec<ProjPoint> = Vec::new();
    let radius = eps;
    let acceptable = |p: &ProjPoint, chosen: &[ProjPoint]| {
        eps_multiplicity(f, p, eps) == 1
            && !avoid.iter().any(|c| c.overlaps(p, radius))
            && !chosen.iter().any(|q| q.dist(p) <= 2.0 * radius)
    };
    let mut k = 1;
    while chosen.len() < count {
        if k > MAX_ABSCISSAE {
            return Err(Error::ExhaustedCandidates(MAX_ABSCISSAE as usize));
        }
        let x0 = abscissa(k);
        k += 1;
        let line = f.specialize(Var::X, x0);
        if line.degree().unwrap_or(0) == 0 {
            continue;
        }
        let roots: Vec<Scalar> = all_roots(&line)?.values().collect();
        let mut reals: Vec<f64> = roots.iter().filter(|z| z.im.abs() <= 1e-9 * (1.0 + z.re.abs())).map(|z| z.re).collect();
        reals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        if let Some(p) = reals.iter().map(|&y| ProjPoint::real(x0, y)).find(|p| acceptable(p, &chosen)) {
            chosen.push(p);
            continue;
        }
        if count - chosen.len() >= 2 {
            let pair = roots
                .iter()
                .filter(|z| z.im > 1e-9 * (1.0 + z.re.abs()))
                .map(|&y| ProjPoint::affine(Scalar::new(x0, 0.0), y))
                .find(|p| acceptable(p, &chosen) && p.dist(&p.conj()) > 2.0 * radius);
            if let Some(p) = pair {
                chosen.push(p);
                chosen.push(p.conj());
            }
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> BiPoly {
        BiPoly::from_terms(&[(2, 0, 1.0), (0, 2, 1.0), (0, 0, -1.0)])
    }

    #[test]
    fn multiplicity_examples() {
        let f = circle();
        assert_eq!(eps_multiplicity(&f, &ProjPoint::real(1.0, 0.0), 1e-2), 1);
        assert_eq!(eps_multiplicity(&f, &ProjPoint::real(5.0, 5.0), 1e-2), 0);
        // node of y^2 - x^2 - x^3 at the origin
        let node = BiPoly::from_terms(&[(0, 2, 1.0), (2, 0, -1.0), (3, 0, -1.0)]);
        assert_eq!(eps_multiplicity(&node, &ProjPoint::real(0.0, 0.0), 1e-3), 2);
    }

    #[test]
    fn genus_arithmetic() {
        let c = |r| EpsCluster { rep: ProjPoint::real(0.0, 0.0), r, members: vec![], radius: 0.1 };
        assert!(is_eps_rational(4, &[c(2), c(2), c(2)]));
        assert!(!is_eps_rational(4, &[c(2), c(2)]));
        assert!(is_eps_rational(3, &[c(2)]));
    }

    #[test]
    fn separated_singularities_stay_apart() {
        let s = |x: f64, y: f64| EpsSingularity { point: ProjPoint::real(x, y), mult: 2, radius: 0.1 };
        assert_eq!(cluster_decompose(&[s(0.0, 0.0), s(1.0, 0.0), s(0.0, 1.0)]).len(), 3);
        let merged = cluster_decompose(&[s(0.0, 0.0), s(0.15, 0.0)]);
        assert_eq!(merged.len(), 1);
        assert_eq!(merged[0].r, 2);
        assert_eq!(merged[0].rep, ProjPoint::real(0.0, 0.0));
    }

    #[test]
    fn van_der_corput_start() {
        assert_eq!(abscissa(1), 0.0);
        assert_eq!(abscissa(2), -1.0);
        assert_eq!(abscissa(3), 1.0);
    }

    #[test]
    fn axis_at_infinity_detected() {
        let f = BiPoly::from_terms(&[(4, 0, 1.0), (0, 3, 1.0)]);
        assert!(!check_hypotheses(&f, 1e-2).avoids_axes_at_infinity);
    }

    #[test]
    fn reducible_product_rejected() {
        let conic = circle();
        let line = BiPoly::from_terms(&[(1, 0, 1.0), (0, 1, -1.0)]);
        let f = &conic * &line;
        assert!(!eps_irreducible_heuristic(&f).unwrap());
        assert_eq!(ruppert_nullity(&f), 2);
    }

    #[test]
    fn smooth_curve_irreducible() {
        let f = BiPoly::from_terms(&[(4, 0, 1.0), (0, 4, 1.0), (1, 1, 0.3), (0, 0, -1.0)]);
        assert!(eps_irreducible_heuristic(&f).unwrap());
    }

    #[test]
    fn circle_has_no_singularities() {
        assert!(find_eps_singularities(&circle(), 1e-6).unwrap().is_empty());
    }
}
