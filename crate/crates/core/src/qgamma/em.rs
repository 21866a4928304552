use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::mpoly::log1mq_deriv;
use super::tr::t_r_eval;
use super::QContext;
use crate::error::{Error, Result};
use crate::exact::bernoulli_f64;
use crate::multigamma::check_order;
use crate::multigamma::kernel::order_kernel;
use crate::numerics::{
    binom_f64, factorial_f64, periodic_bernoulli_integral, BernoulliIntegrand, CompensatedSum,
    PanelScheme, RealPoly, Scalar,
};
use crate::result::{EvalResult, Method};

/// `j!/(j-k)!`.
fn falling_f64(j: usize, k: usize) -> f64 {
    ((j - k + 1)..=j).map(|v| v as f64).product()
}

/// `h(t) = t^j log((1-q^t)/(1-q))`, the summand behind `C_j(q)`.
struct PowerLogQ<'a> {
    j: usize,
    p: usize,
    ctx: &'a QContext,
}

impl PowerLogQ<'_> {
    /// `D^p h(t)` without the `i = 0` Leibniz term, which vanishes at `t = 1`
    /// and for `p > j`.
    fn deriv(&self, p: usize, t: f64) -> f64 {
        let j = self.j;
        let mut acc = 0.0;
        for i in p.saturating_sub(j).max(1)..=p {
            let k = p - i;
            let c = binom_f64(p, i) * falling_f64(j, k) * t.powi((j - k) as i32);
            acc += c * log1mq_deriv(i, t, self.ctx);
        }
        acc
    }
}

impl BernoulliIntegrand for PowerLogQ<'_> {
    type Value = f64;
    fn value(&self, t: f64) -> f64 {
        self.deriv(self.p, t)
    }
    fn derivative(&self, i: usize, t: f64) -> Option<f64> {
        Some(self.deriv(self.p + i, t))
    }
}

/// `C_j(q) = -Σ_{r=1}^{N+1} B_r/r! f_{j+1,r-1}(q)
///          + (-1)^N/(N+1)! ∫_1^∞ B̄_{N+1}(t) D^{N+1} h(t) dt`,
/// with `f_{j+1,r-1}(q) = D^{r-1} h(1)` and `N = order ≥ j`.
///
/// `panels` overrides the number of unit panels; by default the integral
/// stops where `t^j q^t < 1e-18`.
pub fn c_j_q_with_order(
    j: usize,
    ctx: &QContext,
    order: usize,
    panels: Option<usize>,
) -> Result<EvalResult> {
    if order < j {
        return Err(Error::Parameter(format!("C_j(q) needs order >= j, got {order} < {j}")));
    }
    let key = (j, ctx.q.to_bits(), order, panels.unwrap_or(0));
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64, usize, usize), EvalResult>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(r) = cache.lock().expect("C_j(q) cache").get(&key) {
        return Ok(*r);
    }
    let h = PowerLogQ { j, p: order + 1, ctx };
    let mut acc = CompensatedSum::new();
    for r in 1..=order + 1 {
        let b = bernoulli_f64(r);
        if b != 0.0 {
            acc.add(-b / factorial_f64(r) * h.deriv(r - 1, 1.0));
        }
    }
    let k_max = panels.unwrap_or_else(|| ctx.panels(1.0, j));
    let scheme = PanelScheme::default().with_k_max(k_max);
    let i = periodic_bernoulli_integral(order + 1, &h, &scheme)?;
    let c = (if order % 2 == 0 { 1.0 } else { -1.0 }) / factorial_f64(order + 1);
    acc.add(c * i.value);
    let r = EvalResult::new(
        acc.total(),
        c.abs() * i.error_bound + acc.rounding_est(),
        i.terms_used,
        Method::Quadrature,
    );
    cache.lock().expect("C_j(q) cache").insert(key, r);
    Ok(r)
}

/// `C_j(q)` with Euler-MacLaurin order `j + 1`.
pub fn c_j_q(j: usize, ctx: &QContext, panels: Option<usize>) -> Result<EvalResult> {
    c_j_q_with_order(j, ctx, j + 1, panels)
}

/// `F(t) = binom(-t,n-1) log((1-q^{z+t})/(1-q^{z+1}))` and its derivatives.
struct QEmIntegrand<'a, T: Scalar> {
    n: usize,
    m: usize,
    z: T,
    dpolys: &'a [RealPoly],
    ctx: &'a QContext,
}

impl<T: Scalar> QEmIntegrand<'_, T> {
    /// `D^p F(t)` without the `i = 0` Leibniz term, which vanishes at `t = 1`
    /// and for `p ≥ n`.
    fn deriv(&self, p: usize, t: f64) -> T {
        let x = self.z + t;
        let mut acc = T::zero();
        for i in (p + 1).saturating_sub(self.n).max(1)..=p {
            let c = binom_f64(p, i) * self.dpolys[p - i].eval(t);
            acc += log1mq_deriv(i, x, self.ctx) * c;
        }
        acc
    }
}

impl<T: Scalar> BernoulliIntegrand for QEmIntegrand<'_, T> {
    type Value = T;
    fn value(&self, t: f64) -> T {
        self.deriv(self.m, t)
    }
    fn derivative(&self, i: usize, t: f64) -> Option<T> {
        Some(self.deriv(self.m + i, t))
    }
    fn singularity(&self) -> Option<Complex64> {
        Some(Complex64::new(-self.z.re(), -self.z.im()))
    }
}

fn check_qem_args<T: Scalar>(n: usize, z: T, m: usize) -> Result<()> {
    check_order(n)?;
    if !(z.re() > -1.0) || !z.is_finite() {
        return Err(Error::Domain(format!("q-Euler-MacLaurin form needs Re z > -1, got {}", z.re())));
    }
    if m <= n {
        return Err(Error::Parameter(format!("need m > n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// `F_{n,r-1}(z;q) = D^{r-1}{binom(-t,n-1) log((1-q^{z+t})/(1-q^{z+1}))}` at `t = 1`.
pub fn f_nr_q<T: Scalar>(n: usize, r: usize, z: T, ctx: &QContext) -> Result<T> {
    check_order(n)?;
    if r == 0 {
        return Err(Error::Parameter("f_nr_q needs r >= 1".into()));
    }
    let ker = order_kernel(n);
    let f = QEmIntegrand { n, m: r - 1, z, dpolys: &ker.dpolys, ctx };
    Ok(f.deriv(r - 1, 1.0))
}

/// `R_{n,m}(z;q) = ((-1)^{m-1}/m!) ∫_1^∞ B̄_m(t) D^m F(t) dt`.
pub fn qem_remainder<T: Scalar>(n: usize, z: T, ctx: &QContext, m: usize) -> Result<EvalResult<T>> {
    check_qem_args(n, z, m)?;
    let ker = order_kernel(n);
    let f = QEmIntegrand { n, m, z, dpolys: &ker.dpolys, ctx };
    let scheme = PanelScheme::default().with_k_max(ctx.panels(1.0 + z.re(), n - 1));
    let r = periodic_bernoulli_integral(m, &f, &scheme)?;
    let c = (if m % 2 == 1 { 1.0 } else { -1.0 }) / factorial_f64(m);
    Ok(EvalResult::new(r.value * c, r.error_bound * c.abs(), r.terms_used, Method::Quadrature))
}

/// Euler-MacLaurin expansion of `log G_n(z+1;q)` of order `m > n`:
///
/// `L_n(z) log((1-q^{z+1})/(1-q)) + Σ_{r=1}^n [(-D)^{r-1} binom(z,n-1)] T_r(z+1)
///  + Σ_j G_{n,j}(z) C_j(q) + Σ_{r=1}^m B_r/r! F_{n,r-1}(z;q) - R_{n,m}(z;q)`,
///
/// where `L_n` is the logarithmic coefficient of the classical higher
/// Stirling formula.
pub fn log_qgn_euler_maclaurin<T: Scalar>(
    n: usize,
    z: T,
    ctx: &QContext,
    m: usize,
) -> Result<EvalResult<T>> {
    check_qem_args(n, z, m)?;
    let ker = order_kernel(n);
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut converged = true;
    let w = z + 1.0;
    let lg = (ctx.one_minus_pow(w) / ctx.one_minus_pow(1.0)).ln();
    acc.add(ker.log_coeff.eval(z) * lg);
    for r in 1..=n {
        let t = t_r_eval(r, w, ctx);
        let c = ker.neg_derivs[r - 1].eval(z);
        acc.add(c * t.value);
        err += c.abs() * t.error_bound;
        converged &= t.converged;
    }
    for j in 0..n {
        let cj = c_j_q(j, ctx, None)?;
        let g = ker.g_polys[j].eval(z);
        acc.add(g * cj.value);
        err += g.abs() * cj.error_bound;
    }
    let f = QEmIntegrand { n, m, z, dpolys: &ker.dpolys, ctx };
    for r in 1..=m {
        let b = bernoulli_f64(r);
        if b != 0.0 {
            acc.add(f.deriv(r - 1, 1.0) * (b / factorial_f64(r)));
        }
    }
    let rem = qem_remainder(n, z, ctx, m)?;
    acc.add(-rem.value);
    err += rem.error_bound + acc.rounding_est();
    let mut e = EvalResult::new(acc.total(), err, rem.terms_used, Method::EulerMaclaurin);
    e.converged = converged && rem.converged;
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qgamma::{log_qgamma_product, log_qgn_product};
    use crate::zeta::c_constant;

    #[test]
    fn order_one_matches_jackson() {
        let c = QContext::new(0.9).unwrap();
        let a = log_qgn_euler_maclaurin(1, 1.5, &c, 3).unwrap().value;
        let b = log_qgamma_product(1.5, &c, 2000).unwrap().value;
        assert!((a - b).abs() < 1e-8, "{a} vs {b}");
    }

    #[test]
    fn barnes_q_at_two() {
        let c = QContext::new(0.5).unwrap();
        assert!(log_qgn_euler_maclaurin(2, 1.0, &c, 4).unwrap().value.abs() < 1e-8);
    }

    #[test]
    fn order_three_against_product() {
        let c = QContext::new(0.95).unwrap();
        let a = log_qgn_euler_maclaurin(3, 0.5, &c, 5).unwrap();
        let b = log_qgn_product(3, 0.5, &c, 2000).unwrap();
        assert!((a.value - b.value).abs() < 1e-8_f64.max(a.error_bound + b.error_bound));
    }

    /// Euler-MacLaurin on `Σ_k log(1-q^k)` with `∫_1^∞ log(1-q^t) dt = Li_2(q)/log q`
    /// gives `C_0(q) = Σ_k log(1-q^k) - Li_2(q)/log q - log(1-q)/2`.
    #[test]
    fn c0_direct_sum() {
        for &q in &[0.2f64, 0.5, 0.8] {
            let c = QContext::new(q).unwrap();
            let s: f64 = (1..400).map(|k| (1.0 - q.powi(k)).ln()).sum();
            let li2 = crate::zeta::polylog(2, q).unwrap();
            let expect = s - li2 / q.ln() - 0.5 * (1.0 - q).ln();
            let v = c_j_q(0, &c, None).unwrap().value;
            assert!((v - expect).abs() < 1e-12, "q={q}: {v} vs {expect}");
        }
    }

    #[test]
    fn classical_limit_of_constants() {
        let c = QContext::new(0.999).unwrap();
        for j in 0..3 {
            let v = c_j_q(j, &c, None).unwrap().value;
            let cl = c_constant(j, j + 1).unwrap().value;
            assert!((v - cl).abs() < 5e-3, "j={j}: {v} vs {cl}");
        }
    }

    #[test]
    fn finite_over_q_range() {
        for &q in &[0.1, 0.5, 0.9, 0.99] {
            let c = QContext::new(q).unwrap();
            for j in 0..3 {
                assert!(c_j_q(j, &c, None).unwrap().value.is_finite());
            }
        }
    }

    #[test]
    fn order_independence() {
        let c = QContext::new(0.6).unwrap();
        let a = c_j_q_with_order(1, &c, 2, None).unwrap().value;
        let b = c_j_q_with_order(1, &c, 5, None).unwrap().value;
        assert!((a - b).abs() < 1e-12);
    }
}
