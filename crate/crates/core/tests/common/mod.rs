//! Independent oracles shared by the integration tests. None of these route
//! through the library's resultant, root finder or pencil code.

#![allow(dead_code)]

use approx_param::paramalg::Parametrization;
use approx_param::poly::{euclid_div, resultant};
use approx_param::rootfind::{all_roots, max_abs_ratfun, Domain, Interval};
use approx_param::{BiPoly, RatFun, UniPoly, Var};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct Gen(SplitMix64);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(SplitMix64::seed_from_u64(seed))
    }

    pub fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.unit()
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.unit() * n as f64) as usize
    }

    pub fn uni(&mut self, deg: usize) -> UniPoly {
        let mut c: Vec<f64> = (0..=deg).map(|_| self.range(-1.0, 1.0)).collect();
        c[deg] = self.range(0.5, 1.0) * if self.unit() < 0.5 { -1.0 } else { 1.0 };
        UniPoly::new(c)
    }

    /// Dense in total degree `<= deg`; the `y^deg` coefficient lies in
    /// `[1, 2]`.
    pub fn bi(&mut self, deg: usize) -> BiPoly {
        let mut terms = Vec::new();
        for k in 0..=deg {
            for i in 0..=k {
                let c = if i == 0 && k == deg { 1.0 + self.unit() } else { self.range(-1.0, 1.0) };
                terms.push((i, k - i, c));
            }
        }
        BiPoly::from_terms(&terms)
    }
}

/// Sylvester matrix determinant through nalgebra's LU.
pub fn sylvester_lu(p: &[f64], q: &[f64]) -> f64 {
    let (m, n) = (p.len() - 1, q.len() - 1);
    let size = m + n;
    let mut a = DMatrix::<f64>::zeros(size, size);
    for r in 0..n {
        for (k, &c) in p.iter().rev().enumerate() {
            a[(r, r + k)] = c;
        }
    }
    for r in 0..m {
        for (k, &c) in q.iter().rev().enumerate() {
            a[(n + r, r + k)] = c;
        }
    }
    a.determinant()
}

/// Roots as eigenvalues of the companion matrix.
pub fn companion_roots(c: &[f64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lc = c[n];
    let mut a = DMatrix::<f64>::zeros(n, n);
    for k in 0..n {
        a[(0, k)] = -c[n - 1 - k] / lc;
        if k + 1 < n {
            a[(k + 1, k)] = 1.0;
        }
    }
    a.complex_eigenvalues().iter().copied().collect()
}

/// Coefficients of `s -> g(s)` of degree `deg`, by interpolation at the
/// Chebyshev points of `[-r, r]`.
pub fn interpolate(deg: usize, r: f64, g: impl Fn(f64) -> f64) -> Vec<f64> {
    let nodes: Vec<f64> = (0..=deg)
        .map(|k| r * ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * deg + 2) as f64).cos())
        .collect();
    let v = DMatrix::from_fn(deg + 1, deg + 1, |i, j| (nodes[i] / r).powi(j as i32));
    let rhs = nalgebra::DVector::from_iterator(deg + 1, nodes.iter().map(|&s| g(s)));
    let sol = v.lu().solve(&rhs).expect("Vandermonde at Chebyshev nodes is invertible");
    sol.iter().enumerate().map(|(j, &c)| c / r.powi(j as i32)).collect()
}

/// Smallest `|s|` with `f(P(t) + s n(t)) = 0`, `n` the unit normal, from
/// interpolation plus companion eigenvalues.
pub fn rho1_oracle(f: &BiPoly, p: &Parametrization, t: f64) -> f64 {
    let (x, y) = p.eval(t);
    let (dx, dy) = (p.p1.derivative().eval(t), p.p2.derivative().eval(t));
    let len = dx.hypot(dy);
    let (nx, ny) = (-dy / len, dx / len);
    let d = f.total_degree();
    let c = interpolate(d, 1.0, |s| f.eval(x + s * nx, y + s * ny));
    let scale = c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let top = c.iter().rposition(|v| v.abs() > 1e-13 * scale).unwrap_or(0);
    if top == 0 {
        return if c[0] == 0.0 { 0.0 } else { f64::INFINITY };
    }
    companion_roots(&c[..=top]).iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
}

fn eval_abs_scale(p: &UniPoly, x: f64) -> f64 {
    p.coeffs().iter().enumerate().map(|(k, c)| c.abs() * x.abs().powi(k as i32)).sum()
}

/// Largest relative gap between `Res_y(p, q)(x0)` and the LU determinant of
/// the specialized Sylvester matrix, over `pairs` random pairs.
pub fn resultant_suite(pairs: usize, seed: u64) -> f64 {
    let mut g = Gen::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..pairs {
        let (dp, dq) = (1 + g.below(4), 1 + g.below(4));
        let (p, q) = (g.bi(dp), g.bi(dq));
        let r = resultant(&p, &q, Var::Y).expect("both have positive y-degree");
        for _ in 0..5 {
            let x0 = g.range(-2.0, 2.0);
            let pc: Vec<f64> = p.specialize(Var::X, x0).coeffs().to_vec();
            let qc: Vec<f64> = q.specialize(Var::X, x0).coeffs().to_vec();
            let det = sylvester_lu(&pc, &qc);
            let scale = eval_abs_scale(&r, x0).max(det.abs()).max(f64::MIN_POSITIVE);
            worst = worst.max((r.eval(x0) - det).abs() / scale);
        }
    }
    worst
}

/// Largest `||p - (q quot + rem)|| / (||p|| deg p)` over `cases` random
/// univariate divisions, and bivariate divisions by a `y`-monic divisor.
pub fn euclid_suite(cases: usize, seed: u64) -> f64 {
    let mut g = Gen::new(seed);
    let mut worst = 0.0f64;
    for k in 0..cases {
        let dp = 1 + g.below(8);
        let dq = 1 + g.below(8);
        if k % 2 == 0 {
            let (p, q) = (g.uni(dp), g.uni(dq));
            let (quot, rem) = p.div_rem(&q).expect("leading coefficient is at least 0.5");
            assert!(rem.degree().map_or(true, |r| r < dq));
            let back = &(&q * &quot) + &rem;
            worst = worst.max((&p - &back).inf_norm() / (p.inf_norm() * dp as f64));
        } else {
            let p = g.bi(dp);
            let dq = dq.min(4);
            let q = g.bi(dq);
            let Ok((quot, rem)) = euclid_div(&p, &q, Var::Y) else { continue };
            assert!(rem.is_zero() || rem.degy() < q.degy());
            let back = &(&q * &quot) + &rem;
            worst = worst.max((&p - &back).inf_norm() / (p.inf_norm() * dp as f64));
        }
    }
    worst
}

/// Largest distance between constructed and recovered roots of random
/// degree-8 polynomials with well separated roots.
pub fn roots_suite(cases: usize, seed: u64) -> f64 {
    let mut g = Gen::new(seed);
    let mut worst = 0.0f64;
    for _ in 0..cases {
        let mut truth: Vec<Complex64> = Vec::new();
        while truth.len() < 8 {
            let z = if truth.len() < 6 && g.unit() < 0.5 {
                Complex64::new(g.range(-3.0, 3.0), g.range(0.3, 2.0))
            } else {
                Complex64::new(g.range(-3.0, 3.0), 0.0)
            };
            let far = truth.iter().all(|w| (w - z).norm() > 0.2 && (w - z.conj()).norm() > 0.2);
            if !far || (z.im != 0.0 && truth.len() > 6) {
                continue;
            }
            truth.push(z);
            if z.im != 0.0 {
                truth.push(z.conj());
            }
        }
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for z in &truth {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, a) in c.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * z;
            }
            c = next;
        }
        let p = UniPoly::new(c.iter().map(|z| z.re).collect());
        let found = all_roots(&p).expect("separated roots converge").expanded();
        for z in &truth {
            let best = found.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min);
            worst = worst.max(best);
        }
    }
    worst
}

/// Largest relative gap between `max |r|` and a 10^5-point grid maximum,
/// for pole-free rational functions on an interval and on the whole line.
pub fn maxabs_suite(cases: usize, seed: u64) -> f64 {
    const GRID: usize = 100_000;
    let mut g = Gen::new(seed);
    let mut worst = 0.0f64;
    for k in 0..cases {
        let mut den = UniPoly::constant(1.0);
        for _ in 0..1 + g.below(2) {
            let (a, b) = (g.range(-2.0, 2.0), g.range(0.5, 1.5));
            den = &den * &UniPoly::new(vec![a * a + b * b, -2.0 * a, 1.0]);
        }
        let drop = g.below(2);
        let num = g.uni(den.degree().unwrap_or(0) - drop);
        let r = RatFun::new(num, den).expect("nonzero denominator");
        let (domain, lo, hi) = if k % 2 == 0 {
            let (a, b) = (g.range(-4.0, 0.0), g.range(0.0, 4.0));
            (Domain::Interval(Interval::new(a, b)), a, b)
        } else {
            (Domain::Real, -std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
        };
        let got = max_abs_ratfun(&r, &domain, 1).expect("no poles").value;
        let mut grid = 0.0f64;
        for s in 0..=GRID {
            let u = lo + (hi - lo) * s as f64 / GRID as f64;
            let t = if k % 2 == 0 { u } else { u.tan() };
            if t.is_finite() {
                grid = grid.max(r.eval(t).abs());
            }
        }
        let lim = r.num().leading().abs() / r.den().leading().abs();
        if k % 2 == 1 && r.num().degree() == r.den().degree() {
            grid = grid.max(lim);
        }
        worst = worst.max((got - grid).abs() / grid.max(1.0));
    }
    worst
}
