use std::ops::{Add, Mul, Sub};

use super::uni::UniPoly;
use crate::scalar::{factorial, Coeff, Scalar};

/// Relative trim threshold applied by every [`BiPoly`] constructor.
pub const TRIM_REL: f64 = 1e-14;

/// Variable selector for operations that act on one of the two variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

impl Var {
    pub fn other(self) -> Var {
        match self {
            Var::X => Var::Y,
            Var::Y => Var::X,
        }
    }
}

/// Dense bivariate polynomial `sum c[i][j] x^i y^j`.
///
/// The same container carries `(x, t)` or `(y, t)` polynomials in the
/// parametrization pipeline; only the naming of the variables changes.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<T: Coeff = f64> {
    nx: usize,
    ny: usize,
    data: Vec<T>,
}

impl<T: Coeff> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly { nx: 0, ny: 0, data: Vec::new() }
    }

    /// Builds from a grid `grid[i][j]` (ragged rows allowed).
    pub fn from_grid(grid: &[Vec<T>]) -> Self {
        let nx = grid.len();
        let ny = grid.iter().map(Vec::len).max().unwrap_or(0);
        let mut data = vec![T::zero(); nx * ny];
        for (i, row) in grid.iter().enumerate() {
            for (j, &c) in row.iter().enumerate() {
                data[i * ny + j] = c;
            }
        }
        BiPoly { nx, ny, data }.normalized()
    }

    /// Builds from `(i, j, c)` triples; repeated monomials accumulate.
    pub fn from_terms(terms: &[(usize, usize, T)]) -> Self {
        let nx = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let ny = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let mut data = vec![T::zero(); nx * ny];
        for &(i, j, c) in terms {
            data[i * ny + j] += c;
        }
        BiPoly { nx, ny, data }.normalized()
    }

    /// `x^i y^j` with coefficient `c`.
    pub fn monomial(c: T, i: usize, j: usize) -> Self {
        Self::from_terms(&[(i, j, c)])
    }

    /// Lifts a polynomial in one variable.
    pub fn from_uni(p: &UniPoly<T>, var: Var) -> Self {
        let terms: Vec<_> = p
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, &c)| match var {
                Var::X => (k, 0, c),
                Var::Y => (0, k, c),
            })
            .collect();
        Self::from_terms(&terms)
    }

    fn normalized(mut self) -> Self {
        let cut = TRIM_REL * self.inf_norm();
        for c in self.data.iter_mut() {
            if c.modulus() <= cut {
                *c = T::zero();
            }
        }
        let mut degx = None;
        let mut degy = None;
        for i in 0..self.nx {
            for j in 0..self.ny {
                if !self.data[i * self.ny + j].is_zero() {
                    degx = Some(degx.map_or(i, |d: usize| d.max(i)));
                    degy = Some(degy.map_or(j, |d: usize| d.max(j)));
                }
            }
        }
        match (degx, degy) {
            (Some(dx), Some(dy)) => {
                let (nx, ny) = (dx + 1, dy + 1);
                if nx == self.nx && ny == self.ny {
                    return self;
                }
                let mut data = vec![T::zero(); nx * ny];
                for i in 0..nx {
                    for j in 0..ny {
                        data[i * ny + j] = self.data[i * self.ny + j];
                    }
                }
                BiPoly { nx, ny, data }
            }
            _ => Self::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn degx(&self) -> usize {
        self.nx.saturating_sub(1)
    }

    pub fn degy(&self) -> usize {
        self.ny.saturating_sub(1)
    }

    pub fn deg_in(&self, var: Var) -> usize {
        match var {
            Var::X => self.degx(),
            Var::Y => self.degy(),
        }
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms().map(|(i, j, _)| i + j).max().unwrap_or(0)
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        if i < self.nx && j < self.ny {
            self.data[i * self.ny + j]
        } else {
            T::zero()
        }
    }

    /// Nonzero terms `(i, j, c)` in row-major order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, T)> + '_ {
        let ny = self.ny;
        self.data
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, &c)| (k / ny, k % ny, c))
    }

    /// Polynomial infinity norm.
    pub fn inf_norm(&self) -> f64 {
        self.data.iter().fold(0.0, |m, c| m.max(c.modulus()))
    }

    pub fn scale(&self, s: T) -> Self {
        BiPoly {
            nx: self.nx,
            ny: self.ny,
            data: self.data.iter().map(|&c| c * s).collect(),
        }
        .normalized()
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(T) -> U) -> BiPoly<U> {
        BiPoly {
            nx: self.nx,
            ny: self.ny,
            data: self.data.iter().map(|&c| f(c)).collect(),
        }
        .normalized()
    }

    pub fn to_complex(&self) -> BiPoly<Scalar> {
        self.map(|c| c.to_complex())
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        let terms: Vec<_> = self.terms().map(|(i, j, c)| (j, i, c)).collect();
        Self::from_terms(&terms)
    }

    pub fn eval<U: Coeff + From<T>>(&self, x: U, y: U) -> U {
        let mut acc = U::zero();
        for i in (0..self.nx).rev() {
            let mut row = U::zero();
            for j in (0..self.ny).rev() {
                row = row * y + U::from(self.data[i * self.ny + j]);
            }
            acc = acc * x + row;
        }
        acc
    }

    /// Partial derivative `d^{i+j} / dx^i dy^j`.
    pub fn partial(&self, i: usize, j: usize) -> Self {
        let terms: Vec<_> = self
            .terms()
            .filter(|&(a, b, _)| a >= i && b >= j)
            .map(|(a, b, c)| {
                let f = falling(a, i) * falling(b, j);
                (a - i, b - j, c * f)
            })
            .collect();
        Self::from_terms(&terms)
    }

    /// Homogeneous part of top total degree, i.e. `F(x, y, 0)`.
    pub fn leading_form(&self) -> Self {
        let d = self.total_degree();
        let terms: Vec<_> = self.terms().filter(|&(i, j, _)| i + j == d).collect();
        Self::from_terms(&terms)
    }

    /// Homogeneous part of total degree `k`.
    pub fn form(&self, k: usize) -> Self {
        let terms: Vec<_> = self.terms().filter(|&(i, j, _)| i + j == k).collect();
        Self::from_terms(&terms)
    }

    pub fn homogenize(&self) -> HomPoly<T> {
        HomPoly::new(self.clone(), self.total_degree())
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a polynomial in the other variable.
    pub fn coeffs_in(&self, var: Var) -> Vec<UniPoly<T>> {
        match var {
            Var::X => (0..self.nx)
                .map(|i| UniPoly::new((0..self.ny).map(|j| self.coeff(i, j)).collect()))
                .collect(),
            Var::Y => (0..self.ny)
                .map(|j| UniPoly::new((0..self.nx).map(|i| self.coeff(i, j)).collect()))
                .collect(),
        }
    }

    /// Inverse of [`coeffs_in`](Self::coeffs_in).
    pub fn from_coeffs_in(cs: &[UniPoly<T>], var: Var) -> Self {
        let mut terms = Vec::new();
        for (k, p) in cs.iter().enumerate() {
            for (l, &c) in p.coeffs().iter().enumerate() {
                match var {
                    Var::X => terms.push((k, l, c)),
                    Var::Y => terms.push((l, k, c)),
                }
            }
        }
        Self::from_terms(&terms)
    }

    /// Substitutes a value for `var`, leaving a polynomial in the other one.
    pub fn specialize<U: Coeff + From<T>>(&self, var: Var, value: U) -> UniPoly<U> {
        UniPoly::new(
            self.coeffs_in(var.other())
                .iter()
                .map(|p| p.eval(value))
                .collect(),
        )
    }

    /// Restriction to the line `base + s * dir` via the Taylor identity
    /// `coeff(s^k) = sum_{|v|=k} f^v(base) dir^v / v!`.
    pub fn compose_line<U: Coeff + From<T>>(&self, base: (U, U), dir: (U, U)) -> UniPoly<U> {
        let d = self.total_degree();
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut out = Vec::with_capacity(d + 1);
        for k in 0..=d {
            let mut acc = U::zero();
            for a in 0..=k {
                let b = k - a;
                if a > self.degx() || b > self.degy() {
                    continue;
                }
                let dv = self.partial(a, b);
                if dv.is_zero() {
                    continue;
                }
                let w = powi(dir.0, a) * powi(dir.1, b) * (1.0 / (factorial(a) * factorial(b)));
                acc += dv.eval(base.0, base.1) * w;
            }
            out.push(acc);
        }
        UniPoly::new(out)
    }
}

impl BiPoly<f64> {
    /// Coefficient vector in a fixed monomial order of total degree `<= d`:
    /// `(i, j)` for `k = 0..=d`, `i = k..=0` (x-power descending).
    pub fn dense_monomials(d: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for k in 0..=d {
            for i in (0..=k).rev() {
                out.push((i, k - i));
            }
        }
        out
    }
}

impl BiPoly<Scalar> {
    pub fn re(&self) -> BiPoly<f64> {
        self.map(|c| c.re)
    }
}

fn falling(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64)
}

pub(crate) fn powi<U: Coeff>(x: U, e: usize) -> U {
    (0..e).fold(U::one(), |acc, _| acc * x)
}

impl<T: Coeff> Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: Self) -> BiPoly<T> {
        let terms: Vec<_> = self.terms().chain(rhs.terms()).collect();
        BiPoly::from_terms(&terms)
    }
}

impl<T: Coeff> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: Self) -> BiPoly<T> {
        let terms: Vec<_> = self
            .terms()
            .chain(rhs.terms().map(|(i, j, c)| (i, j, -c)))
            .collect();
        BiPoly::from_terms(&terms)
    }
}

impl<T: Coeff> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: Self) -> BiPoly<T> {
        let mut terms = Vec::new();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                terms.push((i + k, j + l, a * b));
            }
        }
        BiPoly::from_terms(&terms)
    }
}

/// Homogeneous polynomial in `(x, y, z)` of a fixed degree.
///
/// `affine` stores the coefficient of `x^i y^j z^{deg-i-j}` at `(i, j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomPoly<T: Coeff = f64> {
    affine: BiPoly<T>,
    deg: usize,
}

impl<T: Coeff> HomPoly<T> {
    /// Panics if some term of `affine` exceeds `deg`.
    pub fn new(affine: BiPoly<T>, deg: usize) -> Self {
        assert!(affine.total_degree() <= deg, "term above homogeneous degree");
        HomPoly { affine, deg }
    }

    pub fn degree(&self) -> usize {
        self.deg
    }

    /// Coefficient of `x^i y^j z^k`, zero unless `i + j + k = deg`.
    pub fn coeff(&self, i: usize, j: usize, k: usize) -> T {
        if i + j + k == self.deg {
            self.affine.coeff(i, j)
        } else {
            T::zero()
        }
    }

    /// Setting `z = 1`.
    pub fn dehomogenize(&self) -> BiPoly<T> {
        self.affine.clone()
    }

    /// `F(x, y, 0)`.
    pub fn at_infinity(&self) -> BiPoly<T> {
        self.affine.form(self.deg)
    }

    pub fn eval<U: Coeff + From<T>>(&self, x: U, y: U, z: U) -> U {
        self.affine
            .terms()
            .map(|(i, j, c)| U::from(c) * powi(x, i) * powi(y, j) * powi(z, self.deg - i - j))
            .fold(U::zero(), |a, b| a + b)
    }

    /// Substitutes polynomials for the three coordinates.
    pub fn eval_polys(&self, x: &UniPoly<T>, y: &UniPoly<T>, z: &UniPoly<T>) -> UniPoly<T> {
        let d = self.deg;
        let powers = |p: &UniPoly<T>| {
            let mut v = vec![UniPoly::constant(T::one())];
            for k in 1..=d {
                let next = &v[k - 1] * p;
                v.push(next);
            }
            v
        };
        let (px, py, pz) = (powers(x), powers(y), powers(z));
        let mut acc = UniPoly::zero();
        for (i, j, c) in self.affine.terms() {
            let term = &(&px[i] * &py[j]) * &pz[d - i - j];
            acc = &acc + &term.scale(c);
        }
        acc
    }
}
