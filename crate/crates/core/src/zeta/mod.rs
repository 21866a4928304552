//! Riemann and Hurwitz zeta derivatives, Euler's constant, polylogarithms.

mod hurwitz;
mod polylog;
mod products;
mod riemann;

use std::sync::OnceLock;

pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_deriv, hurwitz_zeta_deriv0};
pub use polylog::{polylog, polylog_eval};
pub use products::{hurwitz_zeta_deriv_neg_product, product_term, zeta_deriv_neg_product};
pub use riemann::{
    c_constant, riemann_zeta_deriv, zeta_deriv_neg, zeta_deriv_neg_eval, zeta_deriv_table,
    ZetaDerivTable,
};

use crate::exact::bernoulli_f64;
use crate::numerics::CompensatedSum;

/// `log √(2π)`.
pub const LOG_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const GAMMA_LITERATURE: f64 = 0.577_215_664_901_532_9;

/// Euler's constant from `H_N - log N` with Euler-MacLaurin corrections at
/// `N = 100`. Checked once against the literature value.
pub fn euler_gamma() -> f64 {
    static G: OnceLock<f64> = OnceLock::new();
    *G.get_or_init(|| {
        let n = 100usize;
        let nf = n as f64;
        let mut acc = CompensatedSum::new();
        for k in (1..=n).rev() {
            acc.add(1.0 / k as f64);
        }
        acc.add(-nf.ln());
        acc.add(-0.5 / nf);
        for k in 1..=8 {
            acc.add(bernoulli_f64(2 * k) / (2 * k) as f64 / nf.powi(2 * k as i32));
        }
        let g = acc.total();
        assert!(
            (g - GAMMA_LITERATURE).abs() < 1e-14,
            "Euler constant self-check failed: {g}"
        );
        g
    })
}
