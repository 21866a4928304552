use num_complex::Complex64;

use super::mpoly::moak_h;
use super::tr::t_r_eval;
use super::QContext;
use crate::error::{Error, Result};
use crate::exact::bernoulli_f64;
use crate::numerics::{
    factorial_f64, periodic_bernoulli_integral, BernoulliIntegrand, CompensatedSum, PanelScheme,
    Scalar,
};
use crate::result::{EvalResult, Method};

/// `log Γ(z+1;q) = -z log(1-q) - Σ_{k=1}^K [log(1-q^{z+k}) - log(1-q^k)]`.
///
/// The omitted tail is bounded by `q^{K+1} |q^z - 1|/(1-q)`.
pub fn log_qgamma_product<T: Scalar>(z: T, ctx: &QContext, k_max: usize) -> Result<EvalResult<T>> {
    if k_max == 0 {
        return Err(Error::Parameter("product length must be >= 1".into()));
    }
    let l = ctx.log_q;
    let mut acc = CompensatedSum::new();
    acc.add(-(z * ctx.log1mq(1.0)));
    let qz_m1 = (z * l).exp_m1();
    for k in 1..=k_max {
        let kf = k as f64;
        let num = ((z + kf) * l).exp_m1();
        if num.abs() < 1e-14 {
            return Err(Error::Pole(format!("1 - q^(z+{k}) vanishes")));
        }
        let den = (kf * l).exp_m1();
        acc.add(-(qz_m1 * ((kf * l).exp() / den)).ln_1p());
    }
    let tail = ctx.q.powi(k_max as i32 + 1) * (ctx.pow(z) - 1.0).abs() / (1.0 - ctx.q);
    Ok(EvalResult::new(acc.total(), tail + acc.rounding_est(), k_max, Method::Product))
}

/// `f(t) = h_l(w + t)` with `h_l' = -h_{l+1}`.
struct MoakIntegrand<'a> {
    l: usize,
    w: f64,
    ctx: &'a QContext,
}

impl BernoulliIntegrand for MoakIntegrand<'_> {
    type Value = f64;
    fn value(&self, t: f64) -> f64 {
        moak_h(self.l, self.w + t, self.ctx)
    }
    fn derivative(&self, i: usize, t: f64) -> Option<f64> {
        let v = moak_h(self.l + i, self.w + t, self.ctx);
        Some(if i % 2 == 0 { v } else { -v })
    }
    fn singularity(&self) -> Option<Complex64> {
        Some(Complex64::new(-self.w, 0.0))
    }
}

fn moak_integral(l: usize, w: f64, ctx: &QContext) -> Result<EvalResult> {
    let scheme = PanelScheme::default().with_start(0).with_k_max(ctx.panels(w, 0));
    periodic_bernoulli_integral(l, &MoakIntegrand { l, w, ctx }, &scheme)
}

/// `C_1(q) = -(1/12) log q - (1/12) log q/(q-1)
///          + ∫_0^∞ (B̄_2(t)/2) (log q/(q^{t+1}-1))² q^{t+1} dt`.
pub fn c1_q(ctx: &QContext) -> Result<EvalResult> {
    let l = ctx.log_q;
    let i = moak_integral(2, 1.0, ctx)?;
    let head = -l / 12.0 - l / (ctx.q - 1.0) / 12.0;
    Ok(EvalResult::new(head + 0.5 * i.value, 0.5 * i.error_bound, i.terms_used, Method::Quadrature))
}

/// Moak-type representation of `log Γ(z+1;q)` with `m` correction terms,
/// `w = z + 1`:
///
/// `(w - 1/2) log((1-q^w)/(1-q)) + T_1(w) + C_1(q) + (1/12) log q
///  + Σ_{k=1}^m B_{2k}/(2k)! h_{2k-1}(w) + R_{2m}(w;q)`,
///
/// `h_l(x) = (log q/(q^x-1))^l M̃_l(q^x)` and
/// `R_{2m}(w;q) = -∫_0^∞ B̄_{2m}(t)/(2m)! h_{2m}(w+t) dt`.
pub fn log_qgamma_moak(z: f64, ctx: &QContext, m: usize) -> Result<EvalResult> {
    if !(z > -1.0) || !z.is_finite() {
        return Err(Error::Domain(format!("Moak form needs z > -1, got {z}")));
    }
    if m == 0 {
        return Err(Error::Parameter("Moak form needs m >= 1".into()));
    }
    let w = z + 1.0;
    let l = ctx.log_q;
    let mut acc = CompensatedSum::new();
    acc.add((w - 0.5) * (ctx.one_minus_pow(w) / ctx.one_minus_pow(1.0)).ln());
    let t1 = t_r_eval(1, w, ctx);
    acc.add(t1.value);
    let c1 = c1_q(ctx)?;
    acc.add(c1.value);
    acc.add(l / 12.0);
    for k in 1..=m {
        acc.add(bernoulli_f64(2 * k) / factorial_f64(2 * k) * moak_h(2 * k - 1, w, ctx));
    }
    let rem = moak_integral(2 * m, w, ctx)?;
    acc.add(-rem.value / factorial_f64(2 * m));
    let err = t1.error_bound
        + c1.error_bound
        + rem.error_bound / factorial_f64(2 * m)
        + acc.rounding_est();
    let mut e = EvalResult::new(acc.total(), err, rem.terms_used, Method::Moak);
    e.converged = t1.converged;
    Ok(e)
}
