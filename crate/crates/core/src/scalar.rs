//! Coefficient types shared by the polynomial containers.

use num_complex::Complex64;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Complex scalar; `re` and `im` are plain `f64` fields.
pub type Scalar = Complex64;

/// Field-like coefficient: implemented for `f64` and [`Scalar`].
pub trait Coeff:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Mul<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    /// Module in the complex sense.
    fn modulus(self) -> f64;
    fn to_complex(self) -> Scalar;
    /// Projection from the complex numbers (real types keep `re`).
    fn from_complex(z: Scalar) -> Self;
    fn is_finite(self) -> bool;

    fn is_zero(self) -> bool {
        self == Self::zero()
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn to_complex(self) -> Scalar {
        Scalar::new(self, 0.0)
    }
    fn from_complex(z: Scalar) -> Self {
        z.re
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        Scalar::new(0.0, 0.0)
    }
    fn one() -> Self {
        Scalar::new(1.0, 0.0)
    }
    fn from_f64(v: f64) -> Self {
        Scalar::new(v, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn to_complex(self) -> Scalar {
        self
    }
    fn from_complex(z: Scalar) -> Self {
        z
    }
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// `true` iff `|im| <= tol * max(1, |re|)`.
pub fn is_real_within(z: Scalar, tol: f64) -> bool {
    z.im.abs() <= tol * z.re.abs().max(1.0)
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}
