use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Arithmetic shared by real and complex evaluation paths.
pub trait Scalar:
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
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn from_f64(x: f64) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn abs(self) -> f64;
    fn ln(self) -> Self;
    fn exp(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn recip(self) -> Self;
    fn is_finite(self) -> bool;

    /// `ln|x|` for real scalars, the principal `ln` for complex ones.
    fn ln_mod(self) -> Self;

    /// `ln(1 + self)`, accurate for small arguments.
    fn ln_1p(self) -> Self;

    /// `exp(self) - 1`, accurate for small arguments.
    fn exp_m1(self) -> Self;

    /// Error-free sum: returns `(s, e)` with `s + e == self + b` exactly.
    fn two_sum(self, b: Self) -> (Self, Self);

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

fn two_sum_f64(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = if a.abs() >= b.abs() { (a - s) + b } else { (b - s) + a };
    (s, e)
}

impl Scalar for f64 {
    fn ln_mod(self) -> Self {
        f64::abs(self).ln()
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn re(self) -> f64 {
        self
    }
    fn im(self) -> f64 {
        0.0
    }
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn recip(self) -> Self {
        f64::recip(self)
    }
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    fn ln_1p(self) -> Self {
        f64::ln_1p(self)
    }
    fn exp_m1(self) -> Self {
        f64::exp_m1(self)
    }
    fn two_sum(self, b: Self) -> (Self, Self) {
        two_sum_f64(self, b)
    }
}

impl Scalar for Complex64 {
    fn ln_mod(self) -> Self {
        Complex64::ln(self)
    }
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    fn re(self) -> f64 {
        self.re
    }
    fn im(self) -> f64 {
        self.im
    }
    fn abs(self) -> f64 {
        self.norm()
    }
    fn ln(self) -> Self {
        Complex64::ln(self)
    }
    fn exp(self) -> Self {
        Complex64::exp(self)
    }
    fn powi(self, n: i32) -> Self {
        Complex64::powi(&self, n)
    }
    fn recip(self) -> Self {
        Complex64::inv(&self)
    }
    fn is_finite(self) -> bool {
        Complex64::is_finite(self)
    }
    fn ln_1p(self) -> Self {
        if self.im == 0.0 && self.re > -1.0 {
            return Complex64::new(self.re.ln_1p(), 0.0);
        }
        if self.norm() < 1e-4 {
            // x - x²/2 + x³/3 - x⁴/4 + x⁵/5, relative error below 1e-20
            let mut acc = Complex64::new(0.2, 0.0);
            for c in [-0.25, 1.0 / 3.0, -0.5, 1.0] {
                acc = acc * self + c;
            }
            return acc * self;
        }
        let u = self + 1.0;
        let d = u - 1.0;
        u.ln() * (self / d)
    }
    fn exp_m1(self) -> Self {
        let (a, b) = (self.re, self.im);
        let s = (0.5 * b).sin();
        Complex64::new(a.exp_m1() * b.cos() - 2.0 * s * s, a.exp() * b.sin())
    }
    fn two_sum(self, b: Self) -> (Self, Self) {
        let (sr, er) = two_sum_f64(self.re, b.re);
        let (si, ei) = two_sum_f64(self.im, b.im);
        (Complex64::new(sr, si), Complex64::new(er, ei))
    }
}

/// Polynomial with binary64 coefficients, `c[i]` multiplying `x^i`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealPoly(pub Vec<f64>);

impl RealPoly {
    pub fn eval<T: Scalar>(&self, x: T) -> T {
        self.0.iter().rev().fold(T::zero(), |acc, &c| acc * x + c)
    }

    /// Sum of `|c_i x^i|`, a scale for rounding estimates.
    pub fn eval_abs(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.0.iter().rev().fold(0.0, |acc, &c| acc * ax + c.abs())
    }
}

impl From<&crate::exact::Poly> for RealPoly {
    fn from(p: &crate::exact::Poly) -> Self {
        RealPoly(p.to_f64_coeffs())
    }
}
