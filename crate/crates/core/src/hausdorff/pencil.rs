use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::paramalg::Parametrization;
use crate::poly::{BiPoly, HomPoly, RatFun, UniPoly};
use crate::rootfind::{all_roots, REAL_TOL};
use crate::scalar::{binomial, factorial, Scalar};

/// Threshold under which `f(P(t))` is treated as identically zero, relative
/// to the size of the terms that produced it.
pub const EXACT_TOL: f64 = 1e-10;
const DEFLATE_TOL: f64 = 1e-8;

/// Coefficients of `D(t, s) = f(P(t) + s n(t))` in `s`.
///
/// `tilde_A_i = nums[i] / w^w_exps[i]`; the unit-normalized coefficient is
/// `tilde_A_i / norm_sq^(i/2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PencilCoeffs {
    pub n: usize,
    pub w: UniPoly,
    pub nums: Vec<UniPoly>,
    pub w_exps: Vec<i32>,
    /// `n1^2 + n2^2` for the (scaled) normal; the constant 1 for a unit
    /// direction.
    pub norm_sq: UniPoly,
    /// Set when `f(P(t))` vanished identically.
    pub exact: bool,
    /// Direction parameter of a directional pencil.
    pub h0: Option<f64>,
}

/// Which line family a pencil describes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Direction {
    Normal,
    Fixed(f64),
}

/// `(2h/(h^2+1), (h^2-1)/(h^2+1))`, a unit vector.
pub fn unit_direction(h: f64) -> (f64, f64) {
    let q = h * h + 1.0;
    (2.0 * h / q, (h * h - 1.0) / q)
}

impl PencilCoeffs {
    pub fn tilde_a(&self, i: usize) -> RatFun {
        RatFun::new(self.nums[i].clone(), self.w.pow(self.w_exps[i].max(0) as u32))
            .expect("monic denominator")
    }

    pub fn norm_sq_ratfun(&self) -> RatFun {
        RatFun::polynomial(self.norm_sq.clone())
    }

    /// Unit-normalized coefficients at `t`, all multiplied by one common
    /// positive factor so that nothing overflows for huge `|t|`.
    pub fn scaled_coeffs(&self, t: f64) -> Result<Vec<f64>> {
        let lt = t.abs().ln();
        let part = |p: &UniPoly| -> (f64, f64) {
            let (m, e) = p.eval_scaled(t);
            let l = if e == 0 { m.abs().ln() } else { m.abs().ln() + e as f64 * lt };
            let sign = if t < 0.0 && e % 2 != 0 { -m.signum() } else { m.signum() };
            (l, sign)
        };
        let (lw, sw) = part(&self.w);
        let (ln, _) = part(&self.norm_sq);
        if lw == f64::NEG_INFINITY || ln == f64::NEG_INFINITY {
            return Err(Error::OutsideDomain(t));
        }
        let mut logs = Vec::with_capacity(self.n + 1);
        for (i, num) in self.nums.iter().enumerate() {
            if num.is_zero() {
                logs.push((f64::NEG_INFINITY, 0.0));
                continue;
            }
            let (l, s) = part(num);
            let k = self.w_exps[i];
            let sign = s * if k % 2 != 0 { sw } else { 1.0 };
            logs.push((l - k as f64 * lw - 0.5 * i as f64 * ln, sign));
        }
        let top = logs.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
        if top == f64::NEG_INFINITY {
            return Ok(vec![0.0; self.n + 1]);
        }
        Ok(logs.iter().map(|&(l, s)| if s == 0.0 { 0.0 } else { s * (l - top).exp() }).collect())
    }

    /// Unit-normalized coefficients `A_i(t)`.
    pub fn coeffs(&self, t: f64) -> Result<Vec<f64>> {
        let lt = t.abs();
        let w = self.w.eval(t);
        let ns = self.norm_sq.eval(t);
        if w == 0.0 || ns == 0.0 || !lt.is_finite() {
            return Err(Error::OutsideDomain(t));
        }
        Ok(self
            .nums
            .iter()
            .enumerate()
            .map(|(i, p)| p.eval(t) / w.powi(self.w_exps[i]) / ns.powf(0.5 * i as f64))
            .collect())
    }

    /// `D(t0, s)` up to a positive factor.
    pub fn specialize(&self, t: f64) -> Result<UniPoly> {
        Ok(UniPoly::new(self.scaled_coeffs(t)?))
    }

    /// Smallest `|s0|` over the roots of `D(t0, s)` (real roots only when
    /// `real_only`); `None` when no admissible root exists.
    pub fn rho(&self, t: f64, real_only: bool) -> Result<Option<f64>> {
        let c = self.scaled_coeffs(t)?;
        if c[0] == 0.0 {
            return Ok(Some(0.0));
        }
        let p = UniPoly::new(c);
        if p.degree().unwrap_or(0) == 0 {
            return Ok(None);
        }
        let roots = all_roots(&p)?;
        Ok(roots
            .values()
            .filter(|z| !real_only || z.im.abs() <= REAL_TOL * (1.0 + z.re.abs()))
            .map(|z| if real_only { z.re.abs() } else { z.norm() })
            .fold(None, |acc: Option<f64>, v| Some(acc.map_or(v, |a| a.min(v)))))
    }

    /// `min_{i >= 1, A_i != 0} C(n, i) |A_0 / A_i|^(1/i)` at `t`.
    pub fn coefficient_bound(&self, t: f64) -> Result<f64> {
        let c = self.scaled_coeffs(t)?;
        let mut best = f64::INFINITY;
        for i in 1..c.len() {
            if c[i] != 0.0 {
                best = best.min(binomial(self.n, i) * (c[0] / c[i]).abs().powf(1.0 / i as f64));
            }
        }
        Ok(best)
    }
}

/// `rho_1` for the normal pencil (or `rho_h` for a directional one).
pub fn rho1(pencil: &PencilCoeffs, t0: f64, real_only: bool) -> Result<Option<f64>> {
    pencil.rho(t0, real_only)
}

/// `sum_{|v| = i} hom(f^v)(X, Y, W) d1^v1 d2^v2 / v!` for `i = 0..=d`.
fn pencil_numerators(f: &BiPoly, x: &UniPoly, y: &UniPoly, w: &UniPoly, dir: (&UniPoly, &UniPoly)) -> Vec<UniPoly> {
    let d = f.total_degree();
    (0..=d)
        .map(|i| {
            let mut acc = UniPoly::zero();
            for a in 0..=i {
                let b = i - a;
                let dv = f.partial(a, b);
                if dv.is_zero() {
                    continue;
                }
                let hom = HomPoly::new(dv, d - i).eval_polys(x, y, w);
                let term = &(&hom * &dir.0.pow(a as u32)) * &dir.1.pow(b as u32);
                acc = &acc + &term.scale_f64(1.0 / (factorial(a) * factorial(b)));
            }
            acc
        })
        .collect()
}

/// `F(|X|, |Y|, |W|)` with absolute coefficients: the magnitude of the
/// terms summed in `F(X, Y, W)`.
fn term_scale(f: &BiPoly, x: &UniPoly, y: &UniPoly, w: &UniPoly) -> f64 {
    let abs = |p: &UniPoly| p.map(|c| c.abs());
    let fa = f.map(|c| c.abs());
    HomPoly::new(fa, f.total_degree()).eval_polys(&abs(x), &abs(y), &abs(w)).inf_norm()
}

/// `p / prod (t - r)` when every `r` is a root of `p` relative to the size
/// of its terms. Each linear factor is divided out in the numerically stable
/// direction: from the top for `|r| <= 1`, from the constant term otherwise.
fn deflate(p: &UniPoly, roots: &[Scalar]) -> Option<UniPoly> {
    let abs = p.map(|c| c.abs());
    for &r in roots {
        let size = abs.eval(r.norm()).max(f64::MIN_POSITIVE);
        if p.eval(r).norm() > DEFLATE_TOL * size {
            return None;
        }
    }
    let mut c: Vec<Scalar> = p.coeffs().iter().map(|&v| Scalar::new(v, 0.0)).collect();
    for &r in roots {
        let n = c.len() - 1;
        if n == 0 {
            return None;
        }
        let mut q = vec![Scalar::new(0.0, 0.0); n];
        if r.norm() <= 1.0 {
            q[n - 1] = c[n];
            for k in (1..n).rev() {
                q[k - 1] = c[k] + r * q[k];
            }
        } else {
            q[0] = -c[0] / r;
            for k in 1..n {
                q[k] = (q[k - 1] - c[k]) / r;
            }
        }
        c = q;
    }
    Some(UniPoly::new(c.iter().map(|z| z.re).collect()))
}

fn build(f: &BiPoly, p: &Parametrization, direction: Direction) -> Result<PencilCoeffs> {
    let d = f.total_degree();
    let pp = p.projective();
    let (x, y, w) = (&pp.x, &pp.y, &pp.w);
    let (d1, d2, norm_sq) = match direction {
        Direction::Normal => {
            let n1 = -&(&(&y.derivative() * w) - &(y * &w.derivative()));
            let n2 = &(&x.derivative() * w) - &(x * &w.derivative());
            if n1.is_zero() && n2.is_zero() {
                return Err(Error::ZeroTangent);
            }
            let ns = &(&n1 * &n1) + &(&n2 * &n2);
            (n1, n2, ns)
        }
        Direction::Fixed(h) => {
            let u = unit_direction(h);
            (UniPoly::constant(u.0), UniPoly::constant(u.1), UniPoly::constant(1.0))
        }
    };
    let mut nums = pencil_numerators(f, x, y, w, (&d1, &d2));
    let mut w_exps: Vec<i32> = (0..=d).map(|i| (d - i) as i32).collect();
    let scale = term_scale(f, x, y, w);
    let exact = nums[0].inf_norm() <= EXACT_TOL * scale;
    if exact {
        nums[0] = UniPoly::zero();
        w_exps[0] = w_exps[1];
    } else {
        // F(X, Y, W) is divisible by W when P has the same points at
        // infinity as f; cancel those factors so A_0 has no spurious poles
        let roots = all_roots(w)?.expanded();
        while w_exps[0] > 0 && !roots.is_empty() {
            match deflate(&nums[0], &roots) {
                Some(q) => {
                    nums[0] = q;
                    w_exps[0] -= 1;
                }
                None => break,
            }
        }
    }
    let h0 = match direction {
        Direction::Normal => None,
        Direction::Fixed(h) => Some(h),
    };
    Ok(PencilCoeffs { n: d, w: w.clone(), nums, w_exps, norm_sq, exact, h0 })
}

/// Restriction of `f` to the normal lines of the parametrized curve.
pub fn normal_pencil(f: &BiPoly, p: &Parametrization) -> Result<PencilCoeffs> {
    build(f, p, Direction::Normal)
}

/// Restriction of `f` to the lines through `P(t)` with the fixed unit
/// direction given by `h0`.
pub fn directional_pencil(f: &BiPoly, p: &Parametrization, h0: f64) -> Result<PencilCoeffs> {
    build(f, p, Direction::Fixed(h0))
}
