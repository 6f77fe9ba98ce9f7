use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{Coeff, Scalar};

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The leading coefficient is nonzero; the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<T: Coeff = f64> {
    coeffs: Vec<T>,
}

impl<T: Coeff> UniPoly<T> {
    /// Builds a polynomial, dropping exactly-zero leading coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// `t - r`
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[T]) -> Self {
        roots
            .iter()
            .fold(Self::constant(T::one()), |acc, &r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).copied().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> T {
        self.coeffs.last().copied().unwrap_or_else(T::zero)
    }

    pub fn inf_norm(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.modulus()))
    }

    /// Zeroes coefficients with `|c| <= rel * ||p||` and drops the resulting
    /// leading zeros.
    pub fn trimmed(&self, rel: f64) -> Self {
        let cut = rel * self.inf_norm();
        Self::new(
            self.coeffs
                .iter()
                .map(|&c| if c.modulus() <= cut { T::zero() } else { c })
                .collect(),
        )
    }

    /// Drops leading coefficients with `|c| <= rel * ||p||`, keeping the rest.
    pub fn trim_leading(&self, rel: f64) -> Self {
        let cut = rel * self.inf_norm();
        let mut coeffs = self.coeffs.clone();
        while coeffs.last().is_some_and(|c| c.modulus() <= cut) {
            coeffs.pop();
        }
        Self::new(coeffs)
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    pub fn scale_f64(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = T::one() / lc;
                Self::new(self.coeffs.iter().map(|&c| c * inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }

    /// Horner evaluation at a point of a possibly wider scalar type.
    pub fn eval<U: Coeff + From<T>>(&self, x: U) -> U {
        self.coeffs
            .iter()
            .rev()
            .fold(U::zero(), |acc, &c| acc * x + U::from(c))
    }

    /// Evaluates `p(x) = m * x^e` returning `(m, e)`, staying in range for
    /// large `|x|` by running Horner on the reversed polynomial in `1/x`.
    pub fn eval_scaled<U: Coeff + From<T>>(&self, x: U) -> (U, i32) {
        let Some(n) = self.degree() else {
            return (U::zero(), 0);
        };
        if x.modulus() <= 1.0 {
            return (self.eval(x), 0);
        }
        let w = U::one() / x;
        let m = self
            .coeffs
            .iter()
            .fold(U::zero(), |acc, &c| acc * w + U::from(c));
        (m, n as i32)
    }

    /// Composition `self(q(t))`.
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| &(&acc * q) + &Self::constant(c))
    }

    /// Euclidean division `self = q * quot + rem` with `deg rem < deg q`.
    pub fn div_rem(&self, q: &Self) -> Result<(Self, Self)> {
        let dq = q.degree().ok_or(Error::IllConditionedDivisor)?;
        let lc = q.leading();
        if lc.modulus() < 1e-10 * q.inf_norm() {
            return Err(Error::IllConditionedDivisor);
        }
        let Some(dp) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if dp < dq {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); dp - dq + 1];
        for k in (0..=dp - dq).rev() {
            let c = rem[k + dq] / lc;
            quot[k] = c;
            for (j, &qc) in q.coeffs.iter().enumerate() {
                rem[k + j] -= c * qc;
            }
            rem[k + dq] = T::zero();
        }
        rem.truncate(dq);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(|&c| f(c)).collect())
    }

    pub fn to_complex(&self) -> UniPoly<Scalar> {
        self.map(|c| c.to_complex())
    }
}

impl UniPoly<Scalar> {
    /// Real part of every coefficient.
    pub fn re(&self) -> UniPoly<f64> {
        self.map(|c| c.re)
    }

    /// Largest `|im|` relative to the norm.
    pub fn imag_ratio(&self) -> f64 {
        let n = self.inf_norm();
        if n == 0.0 {
            return 0.0;
        }
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.im.abs())) / n
    }
}

impl<T: Coeff> Add for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn add(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn sub(self, rhs: Self) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn mul(self, rhs: Self) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Coeff> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_exact() {
        let p = UniPoly::new(vec![-1.0, 0.0, 1.0]);
        let q = UniPoly::new(vec![-1.0, 1.0]);
        let (quot, rem) = p.div_rem(&q).unwrap();
        assert_eq!(quot.coeffs(), &[1.0, 1.0]);
        assert!(rem.is_zero());
    }

    #[test]
    fn constant_over_linear() {
        let p = UniPoly::constant(5.0);
        let q = UniPoly::new(vec![-3.0, 1.0]);
        let (quot, rem) = p.div_rem(&q).unwrap();
        assert!(quot.is_zero());
        assert_eq!(rem.coeffs(), &[5.0]);
    }

    #[test]
    fn tiny_leading_divisor_rejected() {
        let q = UniPoly::new(vec![1.0, 1e-12]);
        assert!(matches!(
            UniPoly::new(vec![1.0, 2.0, 3.0]).div_rem(&q),
            Err(Error::IllConditionedDivisor)
        ));
    }

    #[test]
    fn scaled_eval_matches_plain() {
        let p = UniPoly::new(vec![1.0, -2.0, 0.5, 3.0]);
        let x = 7.5;
        let (m, e) = p.eval_scaled(x);
        assert!((m * x.powi(e) - p.eval(x)).abs() < 1e-10 * p.eval(x).abs());
    }

    #[test]
    fn from_roots_expands() {
        let p = UniPoly::from_roots(&[1.0, 2.0]);
        assert_eq!(p.coeffs(), &[2.0, -3.0, 1.0]);
    }
}
