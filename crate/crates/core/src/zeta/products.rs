use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::rational::{int, to_f64};
use crate::exact::{bernoulli_poly, p_poly, Poly, Rational};
use crate::numerics::{CompensatedSum, RealPoly};
use crate::result::{EvalResult, Method};

/// Below this `w` the product term is evaluated directly.
const SERIES_FROM: f64 = 8.0;
const SERIES_TERMS: usize = 48;

/// Per-`j` data for `a_j(w) = B_{j+1}(w+1)/(j+1) log(1+1/w) + P_j(w+1) - P_j(w)`.
struct ProductKernel {
    bern: RealPoly,
    delta_p: RealPoly,
    p_j: RealPoly,
    /// `a_j(w) = Σ_{p≥2} e_p w^{-p}`; index `p`.
    inv: Vec<f64>,
}

impl ProductKernel {
    fn new(j: usize) -> Self {
        let b: Poly = bernoulli_poly(j + 1)
            .shift(&int(1))
            .scale(&(int(1) / int(j as i64 + 1)));
        let p = p_poly(j);
        let delta = p.shift(&int(1)) - &p;
        let mut inv = vec![0.0; SERIES_TERMS + 2];
        for (pp, slot) in inv.iter_mut().enumerate().skip(2) {
            let mut e = Rational::zero();
            for (i, bi) in b.coeffs().iter().enumerate() {
                let l = i + pp;
                let s = if l % 2 == 1 { int(1) } else { int(-1) };
                e += bi * s / int(l as i64);
            }
            *slot = to_f64(&e);
        }
        ProductKernel {
            bern: RealPoly::from(&b),
            delta_p: RealPoly::from(&delta),
            p_j: RealPoly::from(&p),
            inv,
        }
    }

    fn term(&self, w: f64) -> f64 {
        if w < SERIES_FROM {
            return self.bern.eval(w) * (1.0 / w).ln_1p() + self.delta_p.eval(w);
        }
        let x = 1.0 / w;
        let mut acc = 0.0;
        for &e in self.inv[2..].iter().rev() {
            acc = acc * x + e;
        }
        acc * x * x
    }
}

fn kernel(j: usize) -> Arc<ProductKernel> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ProductKernel>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("kernel cache");
    guard.entry(j).or_insert_with(|| Arc::new(ProductKernel::new(j))).clone()
}

/// One log-factor of the product for `ζ'(-j)` at `w = k` (or `w = z + k`):
/// `B_{j+1}(w+1)/(j+1) log(1 + 1/w) + P_j(w+1) - P_j(w)`.
///
/// For `w ≥ 8` the polynomial parts cancel exactly, so the term is taken
/// from its expansion in `1/w`, which starts at `w^{-2}`.
pub fn product_term(j: usize, w: f64) -> f64 {
    kernel(j).term(w)
}

/// `ζ'(-j) ≈ P_j(1) + Σ_{k=1}^K a_j(k)`; error estimate `|a_K| K`.
pub fn zeta_deriv_neg_product(j: usize, k_max: usize) -> Result<EvalResult> {
    if k_max == 0 {
        return Err(Error::Parameter("product length must be >= 1".into()));
    }
    let ker = kernel(j);
    let mut acc = CompensatedSum::new();
    acc.add(ker.p_j.eval(1.0));
    let mut last = 0.0;
    for k in 1..=k_max {
        last = ker.term(k as f64);
        acc.add(last);
    }
    let err = last.abs() * k_max as f64 + acc.rounding_est();
    Ok(EvalResult::new(acc.total(), err, k_max, Method::Product))
}

/// `ζ'(-j, z) ≈ B_{j+1}(z)/(j+1) log z + P_j(z) + Σ_{k=0}^K a_j(z+k)`.
pub fn hurwitz_zeta_deriv_neg_product(j: usize, z: f64, k_max: usize) -> Result<EvalResult> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("need z > 0, got {z}")));
    }
    if k_max == 0 {
        return Err(Error::Parameter("product length must be >= 1".into()));
    }
    let ker = kernel(j);
    let mut acc = CompensatedSum::new();
    acc.add(ker.bern.eval(z - 1.0) * z.ln());
    acc.add(ker.p_j.eval(z));
    let mut last = 0.0;
    for k in 0..=k_max {
        last = ker.term(z + k as f64);
        acc.add(last);
    }
    let err = last.abs() * (z + k_max as f64) + acc.rounding_est();
    Ok(EvalResult::new(acc.total(), err, k_max + 1, Method::Product))
}
