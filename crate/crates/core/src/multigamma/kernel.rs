//! Per-order coefficient data, generated exactly once and rounded to `f64`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;

use crate::exact::rational::{factorial, to_f64};
use crate::exact::stirling_formula::{
    constant_part, fnr_inverse_coeffs, log_coefficient, polynomial_part,
};
use crate::exact::{
    bernoulli_number, binomial_poly, f_n_symbolic, g_polynomials, neg_derivative, stirling_first, ConstTag, Rational,
    SymbolicConstantCombo,
};
use crate::numerics::{RealPoly, Scalar};
use crate::zeta::{euler_gamma, zeta_deriv_neg};

/// Largest series index `r` kept for the asymptotic expansion.
pub(crate) const R_MAX: usize = 40;
const P_MAX: usize = 2 * R_MAX;

pub(crate) struct OrderKernel {
    pub n: usize,
    pub log_coeff: RealPoly,
    pub poly_part: RealPoly,
    /// Constant block of the Stirling / Euler-MacLaurin forms.
    pub consts: Vec<(RealPoly, f64)>,
    /// `F_n(z)` of the Weierstrass form.
    pub f_n: Vec<(RealPoly, f64)>,
    /// `fnr[p][l]`: `F_{n,p}(z) = Σ_l fnr[p][l] (z+1)^{-l}`.
    pub fnr: Vec<Vec<f64>>,
    /// `series[r][l] = B_{2r}/(2r)! · fnr[2r-1][l]`, `r = 1..=R_MAX`.
    pub series: Vec<Vec<f64>>,
    /// `D^i binom(-t, n-1)` as polynomials in `t`, `i = 0..n-1`.
    pub dpolys: Vec<RealPoly>,
    /// `S_{n-1,r}/(n-1)!`, `r = 0..n-1`.
    pub stirling: Vec<f64>,
    /// `(-d/dz)^{r-1} binom(z, n-1)`, `r = 1..=n` at index `r - 1`.
    pub neg_derivs: Vec<RealPoly>,
    /// `G_{n,j}(z)`, `j = 0..n-1`.
    pub g_polys: Vec<RealPoly>,
}

fn numeric_combo(c: &SymbolicConstantCombo) -> Vec<(RealPoly, f64)> {
    c.iter()
        .map(|(tag, p)| {
            let v = match tag {
                ConstTag::One => 1.0,
                ConstTag::Gamma => euler_gamma(),
                ConstTag::ZetaD(r) => zeta_deriv_neg(*r),
            };
            (RealPoly::from(p), v)
        })
        .collect()
}

impl OrderKernel {
    fn new(n: usize) -> Self {
        let fnr: Vec<Vec<f64>> = (0..=P_MAX)
            .map(|p| fnr_inverse_coeffs(n, p).iter().map(to_f64).collect())
            .collect();
        let series = (0..=R_MAX)
            .map(|r| {
                if r == 0 {
                    return Vec::new();
                }
                let b = bernoulli_number(2 * r) / Rational::from_integer(factorial(2 * r as u32));
                fnr_inverse_coeffs(n, 2 * r - 1).iter().map(|c| to_f64(&(c * &b))).collect()
            })
            .collect();
        let mut d = binomial_poly(n - 1).reflect();
        let mut dpolys = Vec::with_capacity(n);
        for _ in 0..n {
            dpolys.push(RealPoly::from(&d));
            d = d.derivative();
        }
        let inv = Rational::new(BigInt::one(), factorial(n as u32 - 1));
        let stirling = (0..n)
            .map(|r| to_f64(&(Rational::from_integer(stirling_first(n - 1, r).unwrap()) * &inv)))
            .collect();
        OrderKernel {
            n,
            log_coeff: RealPoly::from(&log_coefficient(n)),
            poly_part: RealPoly::from(&polynomial_part(n)),
            consts: numeric_combo(&constant_part(n)),
            f_n: numeric_combo(&f_n_symbolic(n)),
            fnr,
            series,
            dpolys,
            stirling,
            neg_derivs: (0..n).map(|r| RealPoly::from(&neg_derivative(&binomial_poly(n - 1), r))).collect(),
            g_polys: g_polynomials(n).iter().map(RealPoly::from).collect(),
        }
    }

    /// Non-series part `log_coeff(z) log(z+1) + poly_part(z) + consts(z)`,
    /// with a magnitude scale for rounding estimates.
    pub fn head<T: Scalar>(&self, z: T) -> (T, f64) {
        let lc = self.log_coeff.eval(z);
        let lg = (z + 1.0).ln();
        let pp = self.poly_part.eval(z);
        let (cv, cs) = eval_combo(&self.consts, z);
        let za = z.abs();
        let scale = self.log_coeff.eval_abs(za) * lg.abs() + self.poly_part.eval_abs(za) + cs;
        (lc * lg + pp + cv, scale)
    }

    /// `F_{n,p}(z)`.
    pub fn fnr_eval<T: Scalar>(&self, p: usize, z: T) -> T {
        let w = (z + 1.0).recip();
        match self.fnr.get(p) {
            Some(c) => horner_inverse(c, w),
            None => {
                let c: Vec<f64> = fnr_inverse_coeffs(self.n, p).iter().map(to_f64).collect();
                horner_inverse(&c, w)
            }
        }
    }
}

/// `Σ_{l≥1} c[l] w^l`.
pub(crate) fn horner_inverse<T: Scalar>(c: &[f64], w: T) -> T {
    let mut acc = T::zero();
    for &cl in c.iter().skip(1).rev() {
        acc = (acc + cl) * w;
    }
    acc
}

pub(crate) fn eval_combo<T: Scalar>(c: &[(RealPoly, f64)], z: T) -> (T, f64) {
    let za = z.abs();
    c.iter().fold((T::zero(), 0.0), |(v, s), (p, k)| {
        (v + p.eval(z) * *k, s + p.eval_abs(za) * k.abs())
    })
}

pub(crate) fn order_kernel(n: usize) -> Arc<OrderKernel> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<OrderKernel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(k) = cache.lock().expect("kernel cache").get(&n) {
        return k.clone();
    }
    let k = Arc::new(OrderKernel::new(n));
    cache.lock().expect("kernel cache").entry(n).or_insert(k).clone()
}
