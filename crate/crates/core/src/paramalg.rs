//! Approximate parametrization of an epsilon-rational curve through the
//! pencil of adjoint curves of degree `d - 2`, and implicitization of the
//! result.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::epsgeo::{
    binary_form_roots, check_hypotheses, cluster_decompose, find_eps_singularities, is_eps_rational,
    simple_eps_points, EpsCluster, ProjPoint,
};
use crate::error::{Error, Result};
use crate::poly::resultant::{interpolate_2d, sylvester_det};
use crate::poly::{content, euclid_div, pencil_resultant, BiPoly, RatFun, UniPoly, Var, CANCEL_TOL};
use crate::rootfind::{real_roots, REAL_TOL};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Divisor {
    pub entries: Vec<(ProjPoint, usize)>,
}

impl Divisor {
    pub fn new(clusters: &[EpsCluster], simple: &[ProjPoint]) -> Self {
        let mut entries: Vec<(ProjPoint, usize)> = clusters.iter().map(|c| (c.rep, c.r)).collect();
        entries.extend(simple.iter().map(|&p| (p, 1)));
        Divisor { entries }
    }
}

/// `H(t) = H1 + t H2`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjointPencil {
    pub h1: BiPoly,
    pub h2: BiPoly,
    /// `(rho1, rho2)` added to `H2` to separate it from `F(x, y, 0)`.
    pub infinity_shift: Option<(f64, f64)>,
}

impl AdjointPencil {
    pub fn at(&self, t: f64) -> BiPoly {
        &self.h1 + &self.h2.scale(t)
    }
}

/// `P(t) = (p1(t), p2(t))`.
#[derive(Clone, Debug, PartialEq)]
pub struct Parametrization {
    pub p1: RatFun,
    pub p2: RatFun,
    /// Real poles of the pair, sorted.
    pub poles: Vec<f64>,
}

/// Homogeneous form `P = (X/W, Y/W)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ProjectiveParam {
    pub x: UniPoly,
    pub y: UniPoly,
    pub w: UniPoly,
}

impl Parametrization {
    pub fn new(p1: RatFun, p2: RatFun) -> Result<Self> {
        let mut p = Parametrization { p1, p2, poles: Vec::new() };
        p.poles = real_roots(&p.projective().w, REAL_TOL)?;
        Ok(p)
    }

    pub fn eval(&self, t: f64) -> (f64, f64) {
        (self.p1.eval(t), self.p2.eval(t))
    }

    /// Common denominator: `den1` when the two denominators agree, their
    /// product otherwise.
    pub fn projective(&self) -> ProjectiveParam {
        let (d1, d2) = (self.p1.den(), self.p2.den());
        let diff = (d1 - d2).inf_norm();
        if d1.degree() == d2.degree() && diff <= 1e-8 * d1.inf_norm() {
            ProjectiveParam { x: self.p1.num().clone(), y: self.p2.num().clone(), w: d1.clone() }
        } else {
            ProjectiveParam {
                x: self.p1.num() * d2,
                y: self.p2.num() * d1,
                w: d1 * d2,
            }
        }
    }

    pub fn is_constant(&self) -> bool {
        self.p1.derivative().num().is_zero() && self.p2.derivative().num().is_zero()
    }
}

/// Intermediate objects of one run, kept for inspection.
#[derive(Clone, Debug)]
pub struct ParamTrace {
    pub clusters: Vec<EpsCluster>,
    pub simple_points: Vec<ProjPoint>,
    pub divisor: Divisor,
    pub pencil: AdjointPencil,
    /// `Res_y(H, f)` in `(x, t)`.
    pub s1: BiPoly,
    /// `Res_x(H, f)` in `(y, t)`.
    pub s2: BiPoly,
    pub a1: UniPoly,
    pub a2: UniPoly,
    /// Quotients; the first variable is `x` (resp. `y`), the second `t`.
    pub b1: BiPoly,
    pub b2: BiPoly,
    pub param: Parametrization,
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

/// Pencil of degree `d - 2` curves with the divisor as base conditions.
pub fn build_adjoint_pencil(divisor: &Divisor, d: usize) -> Result<AdjointPencil> {
    let monos = BiPoly::dense_monomials(d - 2);
    let n = monos.len();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (q, mult) in &divisor.entries {
        let order = mult.saturating_sub(1).max(1);
        for k in 0..order {
            for a in 0..=k {
                let b = k - a;
                let row: Vec<Scalar> = monos
                    .iter()
                    .map(|&(i, j)| {
                        if i < a || j < b {
                            Scalar::new(0.0, 0.0)
                        } else {
                            q.a.powu((i - a) as u32) * q.b.powu((j - b) as u32) * (falling(i, a) * falling(j, b))
                        }
                    })
                    .collect();
                rows.push(row.iter().map(|c| c.re).collect());
                if row.iter().any(|c| c.im != 0.0) {
                    rows.push(row.iter().map(|c| c.im).collect());
                }
            }
        }
    }
    let m = rows.len().max(n);
    let mut a = DMatrix::<f64>::zeros(m, n);
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            a[(r, c)] = v;
        }
    }
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let sv = svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&x, &y| sv[x].partial_cmp(&sv[y]).unwrap());
    let null: Vec<usize> = order.iter().copied().filter(|&k| sv[k] <= 1e-9 * smax).collect();
    if null.len() != 2 {
        return Err(Error::WrongDimension(null.len()));
    }
    let gens: Vec<BiPoly> = null
        .iter()
        .map(|&k| {
            let mut coeffs: Vec<f64> = (0..n).map(|c| v_t[(k, c)]).collect();
            if let Some(first) = coeffs.iter().find(|c| c.abs() > 1e-12) {
                if *first < 0.0 {
                    coeffs.iter_mut().for_each(|c| *c = -*c);
                }
            }
            let terms: Vec<_> = monos.iter().zip(&coeffs).map(|(&(i, j), &c)| (i, j, c)).collect();
            BiPoly::from_terms(&terms)
        })
        .collect();
    Ok(AdjointPencil { h1: gens[0].clone(), h2: gens[1].clone(), infinity_shift: None })
}

/// Whether the degree-`k` part of `h` vanishes at one of the given points
/// at infinity.
fn shares_infinity(h: &BiPoly, k: usize, points: &[(Scalar, Scalar)]) -> bool {
    let lead = h.form(k);
    let scale = lead.inf_norm();
    if scale == 0.0 {
        return true;
    }
    points.iter().any(|&(a, b)| {
        let len = (a.norm_sqr() + b.norm_sqr()).sqrt();
        lead.eval(a / len, b / len).norm() <= 1e-6 * scale
    })
}

/// Replaces `H2` by `H2 + rho1 x^(d-2) + rho2 y^(d-2)` when both generators
/// meet `F(x, y, 0)`.
pub fn fix_infinity_gcd(pencil: AdjointPencil, f: &BiPoly, eps: f64) -> Result<AdjointPencil> {
    let d = f.total_degree();
    let k = d - 2;
    let at_inf = binary_form_roots(&f.leading_form(), d)?;
    if !shares_infinity(&pencil.h1, k, &at_inf) || !shares_infinity(&pencil.h2, k, &at_inf) {
        return Ok(pencil);
    }
    for (r1, r2) in [(eps / 2.0, eps / 3.0), (eps / 5.0, eps / 7.0)] {
        let shift = BiPoly::from_terms(&[(k, 0, r1), (0, k, r2)]);
        let h2 = &pencil.h2 + &shift;
        if !shares_infinity(&h2, k, &at_inf) {
            return Ok(AdjointPencil { h1: pencil.h1.clone(), h2, infinity_shift: Some((r1, r2)) });
        }
    }
    Err(Error::CannotSeparate)
}

/// `prod (v - c)^m` over the given coordinates, as a real polynomial.
fn coordinate_product(coords: &[(Scalar, usize)]) -> Result<UniPoly> {
    let mut acc = UniPoly::<Scalar>::constant(Scalar::new(1.0, 0.0));
    for &(c, m) in coords {
        acc = &acc * &UniPoly::linear_root(c).pow(m as u32);
    }
    if acc.imag_ratio() > 1e-8 {
        return Err(Error::HypothesisFailed("unpaired complex base point".into()));
    }
    Ok(acc.re())
}

/// Root of `B = b1(t) v + b0(t)` as a rational function, after the content
/// and degree checks.
fn linear_root(b: &BiPoly) -> Result<RatFun> {
    let rows = b.coeffs_in(Var::X);
    let norm = b.inf_norm();
    let deg = rows.iter().rposition(|r| r.inf_norm() > 1e-8 * norm).unwrap_or(0);
    if deg != 1 {
        return Err(Error::QuotientDegreeUnexpected(deg));
    }
    let c = content(b, Var::X, 1e-8)?;
    if c.degree().unwrap_or(0) > 0 {
        return Err(Error::Degenerate);
    }
    RatFun::new(-&rows[0], rows[1].clone())?.normalize(CANCEL_TOL)
}

pub fn approx_parametrize(f: &BiPoly, eps: f64) -> Result<Parametrization> {
    Ok(parametrize_traced(f, eps)?.param)
}

/// The full pipeline, keeping the intermediate objects.
pub fn parametrize_traced(f: &BiPoly, eps: f64) -> Result<ParamTrace> {
    let hyp = check_hypotheses(f, eps);
    if let Some(reason) = hyp.failure() {
        return Err(Error::HypothesisFailed(reason.to_string()));
    }
    let d = f.total_degree();
    let clusters = cluster_decompose(&find_eps_singularities(f, eps)?);
    if !is_eps_rational(d, &clusters) {
        return Err(Error::NotEpsRational);
    }
    let simple_points = simple_eps_points(f, eps, d - 3, &clusters)?;
    let divisor = Divisor::new(&clusters, &simple_points);
    let pencil = fix_infinity_gcd(build_adjoint_pencil(&divisor, d)?, f, eps)?;

    let s1 = pencil_resultant(&pencil.h1, &pencil.h2, f, Var::Y)?;
    let s2 = pencil_resultant(&pencil.h1, &pencil.h2, f, Var::X)?;

    let weight = |(_, m): &(ProjPoint, usize)| if *m >= 2 { m * (m - 1) } else { 1 };
    let a1 = coordinate_product(&divisor.entries.iter().map(|e| (e.0.a, weight(e))).collect::<Vec<_>>())?;
    let a2 = coordinate_product(&divisor.entries.iter().map(|e| (e.0.b, weight(e))).collect::<Vec<_>>())?;

    let (b1, _) = euclid_div(&s1, &BiPoly::from_uni(&a1, Var::X), Var::X)?;
    let (b2, _) = euclid_div(&s2, &BiPoly::from_uni(&a2, Var::X), Var::X)?;
    let p1 = linear_root(&b1)?;
    let p2 = linear_root(&b2)?;
    let param = Parametrization::new(p1, p2)?;
    Ok(ParamTrace { clusters, simple_points, divisor, pencil, s1, s2, a1, a2, b1, b2, param })
}

/// Terms below this fraction of the norm are dropped from the implicit
/// equation.
pub const IMPLICIT_TRIM: f64 = 1e-9;

/// Implicit equation `Res_t(x den1 - num1, y den2 - num2)`, scaled to unit
/// norm with its largest coefficient positive.
pub fn implicitize(p: &Parametrization) -> Result<BiPoly> {
    if p.is_constant() {
        return Err(Error::DegenerateParametrization);
    }
    let n1 = p.p1.num().degree().unwrap_or(0).max(p.p1.den().degree().unwrap_or(0));
    let n2 = p.p2.num().degree().unwrap_or(0).max(p.p2.den().degree().unwrap_or(0));
    let padded = |q: &UniPoly, n: usize| -> Vec<Scalar> { (0..=n).map(|k| Scalar::new(q.coeff(k), 0.0)).collect() };
    let (num1, den1) = (padded(p.p1.num(), n1), padded(p.p1.den(), n1));
    let (num2, den2) = (padded(p.p2.num(), n2), padded(p.p2.den(), n2));
    // degree n2 in x and n1 in y
    let grid = interpolate_2d(n2, n1, |x, y| {
        let a: Vec<Scalar> = (0..=n1).map(|k| x * den1[k] - num1[k]).collect();
        let b: Vec<Scalar> = (0..=n2).map(|k| y * den2[k] - num2[k]).collect();
        sylvester_det(&a, &b)
    });
    let real: Vec<Vec<f64>> = grid.iter().map(|r| r.iter().map(|c| c.re).collect()).collect();
    let raw = BiPoly::from_grid(&real);
    if raw.is_zero() {
        return Err(Error::DegenerateParametrization);
    }
    let norm = raw.inf_norm();
    let terms: Vec<_> = raw.terms().filter(|t| t.2.abs() > IMPLICIT_TRIM * norm).collect();
    let trimmed = BiPoly::from_terms(&terms);
    Ok(normalize_sign(&trimmed))
}

/// Unit inf-norm, with the first coefficient of largest modulus positive.
pub fn normalize_sign(f: &BiPoly) -> BiPoly {
    let norm = f.inf_norm();
    if norm == 0.0 {
        return f.clone();
    }
    let big = f.terms().find(|t| t.2.abs() >= norm * (1.0 - 1e-12)).map(|t| t.2).unwrap_or(1.0);
    f.scale(big.signum() / norm)
}

/// Largest `|f(P(t))| / ||f||` over `count` midpoints of `[lo, hi]`,
/// skipping parameters within `exclusion` of a real pole.
pub fn residual(f: &BiPoly, p: &Parametrization, lo: f64, hi: f64, count: usize, exclusion: f64) -> f64 {
    let norm = f.inf_norm();
    let mut worst = 0.0f64;
    for k in 0..count {
        let t = lo + (hi - lo) * (k as f64 + 0.5) / count as f64;
        if p.poles.iter().any(|&a| (t - a).abs() < exclusion) {
            continue;
        }
        let (x, y) = p.eval(t);
        worst = worst.max(f.eval(x, y).abs() / norm);
    }
    worst
}

/// Coefficient-wise distance between two curves after scaling both to unit
/// norm, up to sign.
pub fn implicit_gap(f: &BiPoly, g: &BiPoly) -> f64 {
    let (f, g) = (normalize_sign(f), normalize_sign(g));
    let (mut plus, mut minus) = (0.0f64, 0.0f64);
    for i in 0..=f.degx().max(g.degx()) {
        for j in 0..=f.degy().max(g.degy()) {
            plus = plus.max((f.coeff(i, j) - g.coeff(i, j)).abs());
            minus = minus.max((f.coeff(i, j) + g.coeff(i, j)).abs());
        }
    }
    plus.min(minus)
}
