//! q-analogues: q-numbers, Jackson's `Γ(z+1;q)`, the multiple q-gamma
//! functions `G_n(z+1;q)` and their Euler-MacLaurin expansion.
//!
//! Convention: every `log_qgamma_*` and `log_qgn_*` function takes `z` and
//! returns the logarithm at `z + 1`.

mod em;
mod jackson;
mod mpoly;
mod multiple;
mod sweep;
mod tr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Scalar;

pub use em::{c_j_q, c_j_q_with_order, f_nr_q, log_qgn_euler_maclaurin, qem_remainder};
pub use jackson::{c1_q, log_qgamma_moak, log_qgamma_product};
pub use mpoly::{log1mq_derivative, m_poly, m_tilde_poly, MPolyTable};
pub use multiple::{log_qgn_product, log_qgn_product_adaptive, PRODUCT_CAP};
pub use sweep::{classical_limit_sweep, SweepRow, SweepTable};
pub use tr::{t_r, t_r_eval};

/// `ln(1e18)`: integrals over `[1, ∞)` stop where `q^t < 1e-18`.
pub(crate) const CUTOFF_LOG: f64 = 41.446_531_673_892_82;

/// The base `q ∈ (0, 1)` together with cached `log q`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QContext {
    pub q: f64,
    pub log_q: f64,
    /// Relative tolerance for q-power series and adaptive products.
    pub series_tol: f64,
}

impl QContext {
    pub fn new(q: f64) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("q must lie in (0, 1), got {q}")));
        }
        Ok(QContext { q, log_q: q.ln(), series_tol: 1e-16 })
    }

    pub fn with_series_tol(mut self, tol: f64) -> Self {
        self.series_tol = tol;
        self
    }

    /// `δ = -log q > 0`.
    pub fn delta(&self) -> f64 {
        -self.log_q
    }

    /// `q^x`.
    pub fn pow<T: Scalar>(&self, x: T) -> T {
        (x * self.log_q).exp()
    }

    /// `1 - q^x`, accurate when `q^x` is close to one.
    pub fn one_minus_pow<T: Scalar>(&self, x: T) -> T {
        -(x * self.log_q).exp_m1()
    }

    /// `log(1 - q^x)`.
    pub fn log1mq<T: Scalar>(&self, x: T) -> T {
        self.one_minus_pow(x).ln()
    }

    /// Number of unit panels after `start` needed for `t^power q^t` to fall
    /// below `1e-18`.
    pub(crate) fn panels(&self, start: f64, power: usize) -> usize {
        let d = self.delta();
        let mut t: f64 = CUTOFF_LOG / d;
        for _ in 0..4 {
            t = (CUTOFF_LOG + power as f64 * t.max(1.0).ln()) / d;
        }
        ((t - start).ceil().max(8.0)) as usize
    }
}

/// `[z]_q = (1 - q^z)/(1 - q)`.
pub fn q_number<T: Scalar>(z: T, ctx: &QContext) -> T {
    ctx.one_minus_pow(z) / ctx.one_minus_pow(1.0)
}

pub(crate) fn binom_eval<T: Scalar>(z: T, n: usize) -> T {
    let mut acc = T::one();
    for i in 0..n {
        acc = acc * (z - i as f64) / (i + 1) as f64;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn context_validation() {
        assert!(QContext::new(0.0).is_err());
        assert!(QContext::new(1.0).is_err());
        assert!(QContext::new(f64::NAN).is_err());
        let c = QContext::new(0.5).unwrap();
        assert!((c.log_q + std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn q_numbers() {
        let c = QContext::new(0.5).unwrap();
        assert!((q_number(1.0, &c) - 1.0).abs() < 1e-16);
        assert!((q_number(2.0, &c) - 1.5).abs() < 1e-15);
        let near = QContext::new(0.999).unwrap();
        assert!((q_number(3.0, &near) - 3.0).abs() < 5e-3);
        let zc = q_number(Complex64::new(2.0, 0.0), &c);
        assert!((zc.re - 1.5).abs() < 1e-15 && zc.im == 0.0);
    }

    #[test]
    fn panel_cutoff() {
        let c = QContext::new(0.5).unwrap();
        let k = c.panels(1.0, 0);
        assert!(0.5f64.powi(k as i32 + 1) < 1e-18);
        assert!(0.5f64.powi(k as i32 - 2) > 1e-18);
    }
}
