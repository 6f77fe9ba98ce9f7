use crate::error::{Error, Result};
use crate::poly::{BiPoly, UniPoly, Var};
use crate::rootfind::all_roots;
use crate::scalar::Scalar;

/// Common-root tolerance used by [`RatFun::normalize`].
pub const CANCEL_TOL: f64 = 1e-10;

/// Real rational function `num / den` with a monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFun {
    num: UniPoly,
    den: UniPoly,
}

impl RatFun {
    /// Makes the denominator monic; no cancellation is attempted.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::IllConditionedDivisor);
        }
        let lc = den.leading();
        Ok(RatFun { num: num.map(|c| c / lc), den: den.map(|c| c / lc) })
    }

    pub fn polynomial(p: UniPoly) -> Self {
        RatFun { num: p, den: UniPoly::constant(1.0) }
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (a, ea) = self.num.eval_scaled(t);
        let (b, eb) = self.den.eval_scaled(t);
        if ea == eb {
            a / b
        } else {
            a / b * t.powi(ea - eb)
        }
    }

    pub fn derivative(&self) -> RatFun {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFun { num, den: &self.den * &self.den }
    }

    /// Cancels numerator/denominator roots that agree within
    /// `tol * (1 + |r|)`, then renormalizes the denominator.
    pub fn normalize(&self, tol: f64) -> Result<RatFun> {
        if self.num.is_zero() {
            return Ok(RatFun { num: UniPoly::zero(), den: UniPoly::constant(1.0) });
        }
        if self.num.degree() == Some(0) || self.den.degree() == Some(0) {
            return RatFun::new(self.num.clone(), self.den.clone());
        }
        let common = common_roots(&self.num, &self.den, tol)?;
        if common.is_empty() {
            return Ok(self.clone());
        }
        let g = real_poly_from_roots(&common);
        let (n, _) = self.num.div_rem(&g)?;
        let (d, _) = self.den.div_rem(&g)?;
        RatFun::new(n, d)
    }
}

/// Roots of `a` that also appear in `b` (greedy one-to-one matching).
pub fn common_roots(a: &UniPoly, b: &UniPoly, tol: f64) -> Result<Vec<Scalar>> {
    let ra = all_roots(a)?.expanded();
    let mut rb = all_roots(b)?.expanded();
    let mut out = Vec::new();
    for z in ra {
        let best = rb
            .iter()
            .enumerate()
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
        if let Some((k, d)) = best {
            if d <= tol * (1.0 + z.norm()) {
                out.push(0.5 * (z + rb[k]));
                rb.swap_remove(k);
            }
        }
    }
    Ok(out)
}

/// Real monic polynomial with the given roots; imaginary round-off in the
/// product is discarded.
pub fn real_poly_from_roots(roots: &[Scalar]) -> UniPoly {
    UniPoly::<Scalar>::from_roots(roots).re()
}

/// Approximate gcd of a family of univariate polynomials: the roots common to
/// all members within `tol`. Monic; the constant `1` when no root is shared.
pub fn approx_gcd(polys: &[UniPoly], tol: f64) -> Result<UniPoly> {
    let nonzero: Vec<&UniPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok(UniPoly::zero());
    };
    if nonzero.iter().any(|p| p.degree() == Some(0)) {
        return Ok(UniPoly::constant(1.0));
    }
    let mut shared = all_roots(first)?.expanded();
    for p in &nonzero[1..] {
        let mut roots = all_roots(p)?.expanded();
        shared.retain(|z| {
            let best = roots
                .iter()
                .enumerate()
                .map(|(k, w)| (k, (z - w).norm()))
                .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap());
            match best {
                Some((k, d)) if d <= tol * (1.0 + z.norm()) => {
                    roots.swap_remove(k);
                    true
                }
                _ => false,
            }
        });
    }
    Ok(real_poly_from_roots(&shared))
}

/// Content of `b` with respect to `var`: the approximate gcd of its
/// coefficients viewed as polynomials in the other variable.
pub fn content(b: &BiPoly, var: Var, tol: f64) -> Result<UniPoly> {
    approx_gcd(&b.coeffs_in(var), tol)
}

/// Divides `b` by `a` as polynomials in `var`, where the leading coefficient
/// of `a` in `var` is constant. Returns quotient and remainder.
pub fn euclid_div(b: &BiPoly, a: &BiPoly, var: Var) -> Result<(BiPoly, BiPoly)> {
    let bc = b.coeffs_in(var);
    let ac = a.coeffs_in(var);
    let da = ac.len().checked_sub(1).ok_or(Error::IllConditionedDivisor)?;
    let lc = &ac[da];
    if lc.degree() != Some(0) || lc.leading().abs() < 1e-10 * a.inf_norm() {
        return Err(Error::IllConditionedDivisor);
    }
    let lc = lc.leading();
    if bc.len() <= da {
        return Ok((BiPoly::zero(), b.clone()));
    }
    let mut rem = bc;
    let mut quot = vec![UniPoly::zero(); rem.len() - da];
    for k in (0..quot.len()).rev() {
        let c = rem[k + da].scale_f64(1.0 / lc);
        for (j, aj) in ac.iter().enumerate() {
            rem[k + j] = &rem[k + j] - &(&c * aj);
        }
        rem[k + da] = UniPoly::zero();
        quot[k] = c;
    }
    rem.truncate(da);
    Ok((BiPoly::from_coeffs_in(&quot, var), BiPoly::from_coeffs_in(&rem, var)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_common_factor() {
        // (t-1)(t+2) / ((t-1)(t-3))
        let num = UniPoly::from_roots(&[1.0, -2.0]);
        let den = UniPoly::from_roots(&[1.0, 3.0]).scale_f64(2.0);
        let r = RatFun::new(num, den).unwrap().normalize(CANCEL_TOL).unwrap();
        assert_eq!(r.den().degree(), Some(1));
        assert!((r.den().coeff(0) + 3.0).abs() < 1e-9);
        assert!((r.eval(0.5) + 0.5).abs() < 1e-9);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let g = approx_gcd(&[UniPoly::from_roots(&[1.0]), UniPoly::from_roots(&[2.0])], 1e-8).unwrap();
        assert_eq!(g.degree(), Some(0));
    }

    #[test]
    fn gcd_finds_shared_pair() {
        let a = &UniPoly::new(vec![1.0, 0.0, 1.0]) * &UniPoly::from_roots(&[5.0]);
        let b = &UniPoly::new(vec![1.0, 0.0, 1.0]) * &UniPoly::from_roots(&[-5.0]);
        let g = approx_gcd(&[a, b], 1e-8).unwrap();
        assert_eq!(g.degree(), Some(2));
        assert!((g.coeff(0) - 1.0).abs() < 1e-9 && g.coeff(1).abs() < 1e-9);
    }

    #[test]
    fn euclid_by_linear_in_y() {
        // (y^2 - x^2) / (y - x) = y + x
        let b = BiPoly::from_terms(&[(0, 2, 1.0), (2, 0, -1.0)]);
        let a = BiPoly::from_terms(&[(0, 1, 1.0), (1, 0, -1.0)]);
        let (q, r) = euclid_div(&b, &a, Var::Y).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, BiPoly::from_terms(&[(0, 1, 1.0), (1, 0, 1.0)]));
    }
}
