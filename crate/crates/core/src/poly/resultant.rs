//! Sylvester resultants.
//!
//! Resultants with a surviving variable are recovered by evaluating the
//! numeric Sylvester determinant on roots of unity and interpolating with an
//! inverse DFT, which is perfectly conditioned for the monomial basis.

use std::f64::consts::PI;

use super::bi::{BiPoly, Var};
use super::uni::UniPoly;
use crate::error::{Error, Result};
use crate::scalar::{Coeff, Scalar};

/// Determinant of a square complex matrix (row-major) by LU with partial
/// pivoting.
pub fn determinant(mut a: Vec<Scalar>, n: usize) -> Scalar {
    let mut det = Scalar::new(1.0, 0.0);
    for col in 0..n {
        let (piv, pmag) = (col..n)
            .map(|r| (r, a[r * n + col].norm()))
            .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
        if pmag == 0.0 {
            return Scalar::new(0.0, 0.0);
        }
        if piv != col {
            for k in 0..n {
                a.swap(piv * n + k, col * n + k);
            }
            det = -det;
        }
        let p = a[col * n + col];
        det *= p;
        for r in col + 1..n {
            let f = a[r * n + col] / p;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let v = a[col * n + k];
                a[r * n + k] -= f * v;
            }
        }
    }
    det
}

/// Sylvester matrix of `p` (formal degree `p.len()-1`) and `q`, ascending
/// coefficients.
pub fn sylvester_matrix(p: &[Scalar], q: &[Scalar]) -> (Vec<Scalar>, usize) {
    let m = p.len() - 1;
    let n = q.len() - 1;
    let size = m + n;
    let mut a = vec![Scalar::new(0.0, 0.0); size * size];
    for r in 0..n {
        for (k, &c) in p.iter().rev().enumerate() {
            a[r * size + r + k] = c;
        }
    }
    for r in 0..m {
        for (k, &c) in q.iter().rev().enumerate() {
            a[(n + r) * size + r + k] = c;
        }
    }
    (a, size)
}

/// Sylvester determinant with formal degrees `p.len()-1` and `q.len()-1`.
pub fn sylvester_det(p: &[Scalar], q: &[Scalar]) -> Scalar {
    match (p.len(), q.len()) {
        (0, _) | (_, 0) => Scalar::new(0.0, 0.0),
        (1, 1) => Scalar::new(1.0, 0.0),
        (1, n) => p[0].powu((n - 1) as u32),
        (m, 1) => q[0].powu((m - 1) as u32),
        _ => {
            let (a, size) = sylvester_matrix(p, q);
            determinant(a, size)
        }
    }
}

/// Resultant of two univariate polynomials.
pub fn resultant_uni<T: Coeff>(p: &UniPoly<T>, q: &UniPoly<T>) -> Scalar {
    let pc: Vec<Scalar> = p.coeffs().iter().map(|c| c.to_complex()).collect();
    let qc: Vec<Scalar> = q.coeffs().iter().map(|c| c.to_complex()).collect();
    sylvester_det(&pc, &qc)
}

fn roots_of_unity(n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|k| Scalar::from_polar(1.0, 2.0 * PI * k as f64 / n as f64))
        .collect()
}

/// Coefficients of a polynomial of degree `< values.len()` from its values
/// on the roots of unity.
fn inverse_dft(values: &[Scalar]) -> Vec<Scalar> {
    let n = values.len();
    (0..n)
        .map(|j| {
            let s = values.iter().enumerate().fold(Scalar::new(0.0, 0.0), |acc, (k, v)| {
                acc + v * Scalar::from_polar(1.0, -2.0 * PI * ((j * k) % n) as f64 / n as f64)
            });
            s / n as f64
        })
        .collect()
}

/// Interpolates a polynomial of degree `<= deg` from a black-box evaluator.
pub fn interpolate_1d(deg: usize, f: impl Fn(Scalar) -> Scalar) -> Vec<Scalar> {
    let nodes = roots_of_unity(deg + 1);
    let vals: Vec<Scalar> = nodes.iter().map(|&z| f(z)).collect();
    inverse_dft(&vals)
}

/// Interpolates a bivariate polynomial with degree bounds `(da, db)`;
/// returns `grid[i][j]` for `a^i b^j`.
pub fn interpolate_2d(da: usize, db: usize, f: impl Fn(Scalar, Scalar) -> Scalar) -> Vec<Vec<Scalar>> {
    let na = roots_of_unity(da + 1);
    let nb = roots_of_unity(db + 1);
    let mut vals = vec![vec![Scalar::new(0.0, 0.0); db + 1]; da + 1];
    for (i, &a) in na.iter().enumerate() {
        for (j, &b) in nb.iter().enumerate() {
            vals[i][j] = f(a, b);
        }
    }
    // transform along b for each a, then along a
    let rows: Vec<Vec<Scalar>> = vals.iter().map(|r| inverse_dft(r)).collect();
    let mut grid = vec![vec![Scalar::new(0.0, 0.0); db + 1]; da + 1];
    for j in 0..=db {
        let col: Vec<Scalar> = rows.iter().map(|r| r[j]).collect();
        for (i, c) in inverse_dft(&col).into_iter().enumerate() {
            grid[i][j] = c;
        }
    }
    grid
}

/// Degree bound of `Res_var(p, q)` in the surviving variable.
pub fn resultant_degree_bound<T: Coeff>(p: &BiPoly<T>, q: &BiPoly<T>, var: Var) -> usize {
    let other = var.other();
    let bezout = p.total_degree() * q.total_degree();
    let mixed = p.deg_in(var) * q.deg_in(other) + q.deg_in(var) * p.deg_in(other);
    bezout.min(mixed)
}

fn coeffs_at<T: Coeff>(cs: &[UniPoly<T>], v: Scalar) -> Vec<Scalar> {
    cs.iter().map(|c| c.to_complex().eval(v)).collect()
}

/// `Res_var(p, q)` as a polynomial in the other variable.
pub fn resultant<T: Coeff>(p: &BiPoly<T>, q: &BiPoly<T>, var: Var) -> Result<UniPoly<T>> {
    if p.is_zero() || q.is_zero() || p.deg_in(var) == 0 || q.deg_in(var) == 0 {
        return Err(Error::DegreeDropped);
    }
    let pc = p.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let bound = resultant_degree_bound(p, q, var);
    let coeffs = interpolate_1d(bound, |v| sylvester_det(&coeffs_at(&pc, v), &coeffs_at(&qc, v)));
    Ok(UniPoly::new(coeffs.into_iter().map(T::from_complex).collect()).trimmed(1e-14))
}

/// `Res_var(h1 + t*h2, q)` as a polynomial in `(other, t)`: the first
/// variable of the returned [`BiPoly`] is the surviving curve variable, the
/// second is `t`.
pub fn pencil_resultant(h1: &BiPoly, h2: &BiPoly, q: &BiPoly, var: Var) -> Result<BiPoly> {
    let hdeg = h1.deg_in(var).max(h2.deg_in(var));
    if q.deg_in(var) == 0 || hdeg == 0 {
        return Err(Error::DegreeDropped);
    }
    let other = var.other();
    let htot = h1.total_degree().max(h2.total_degree());
    let hother = h1.deg_in(other).max(h2.deg_in(other));
    let bound = (htot * q.total_degree())
        .min(hdeg * q.deg_in(other) + q.deg_in(var) * hother);
    let tdeg = q.deg_in(var);
    let h1c = h1.coeffs_in(var);
    let h2c = h2.coeffs_in(var);
    let qc = q.coeffs_in(var);
    let grid = interpolate_2d(bound, tdeg, |v, t| {
        let a = coeffs_at(&h1c, v);
        let b = coeffs_at(&h2c, v);
        let h: Vec<Scalar> = (0..=hdeg)
            .map(|k| a.get(k).copied().unwrap_or_default() + t * b.get(k).copied().unwrap_or_default())
            .collect();
        sylvester_det(&h, &coeffs_at(&qc, v))
    });
    let real: Vec<Vec<f64>> = grid.iter().map(|r| r.iter().map(|c| c.re).collect()).collect();
    Ok(BiPoly::from_grid(&real))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_lines() {
        // Res_y(y - x, y + x) = 2x
        let p = BiPoly::from_terms(&[(0, 1, 1.0), (1, 0, -1.0)]);
        let q = BiPoly::from_terms(&[(0, 1, 1.0), (1, 0, 1.0)]);
        let r = resultant(&p, &q, Var::Y).unwrap();
        assert_eq!(r.degree(), Some(1));
        assert!((r.coeff(1) - 2.0).abs() < 1e-14);
        assert!(r.coeff(0).abs() < 1e-14);
    }

    #[test]
    fn univariate_value() {
        // Res_x(x^2 - 2, x - 1) = -1
        let p = UniPoly::new(vec![-2.0, 0.0, 1.0]);
        let q = UniPoly::new(vec![-1.0, 1.0]);
        let r = resultant_uni(&p, &q);
        assert!((r.re + 1.0).abs() < 1e-14 && r.im.abs() < 1e-14);
    }

    #[test]
    fn degree_zero_operand_is_rejected() {
        let p = BiPoly::from_terms(&[(1, 0, 1.0)]);
        let q = BiPoly::from_terms(&[(0, 1, 1.0)]);
        assert!(matches!(resultant(&p, &q, Var::Y), Err(Error::DegreeDropped)));
    }
}
