use num_complex::Complex64;

use super::kernel::order_kernel;
use super::{check_order, check_pole};
use crate::error::{Error, Result};
use crate::exact::bernoulli_f64;
use crate::numerics::{
    binom_f64, factorial_f64, periodic_bernoulli_integral, BernoulliIntegrand, PanelScheme,
    RealPoly, Scalar,
};
use crate::result::{EvalResult, Method};

/// `g(t) = binom(-t, n-1) log((z+t)/(z+1))` and its `t`-derivatives.
pub(crate) struct EmIntegrand<T: Scalar> {
    n: usize,
    m: usize,
    z: T,
    dpolys: Vec<RealPoly>,
}

impl<T: Scalar> EmIntegrand<T> {
    pub(crate) fn new(n: usize, m: usize, z: T) -> Self {
        EmIntegrand { n, m, z, dpolys: order_kernel(n).dpolys.clone() }
    }

    /// `D^p g(t) = Σ_l C(p,l) D^{p-l}binom(-t,n-1) · (-1)^{l-1}(l-1)!/(z+t)^l`,
    /// plus the `l = 0` term while `p ≤ n-1`.
    pub(crate) fn deriv(&self, p: usize, t: f64) -> T {
        let zt = self.z + t;
        let inv = zt.recip();
        let l0 = p.saturating_sub(self.n - 1).max(1);
        let mut acc = T::zero();
        let mut pw = inv.powi(l0 as i32);
        for l in l0..=p {
            let c = binom_f64(p, l) * factorial_f64(l - 1) * self.dpolys[p - l].eval(t);
            acc += pw * if l % 2 == 1 { c } else { -c };
            pw *= inv;
        }
        if p < self.n {
            acc += (zt / (self.z + 1.0)).ln() * self.dpolys[p].eval(t);
        }
        acc
    }
}

impl<T: Scalar> BernoulliIntegrand for EmIntegrand<T> {
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

/// `R_{n,m}(z) = ((-1)^{m-1}/m!) ∫_1^∞ B̄_m(t) D^m g(t) dt`.
pub fn em_remainder<T: Scalar>(n: usize, z: T, m: usize) -> Result<EvalResult<T>> {
    check_em_args(n, z, m)?;
    let f = EmIntegrand::new(n, m, z);
    let scheme = PanelScheme::default().with_tail_exponent((m + 1 - n) as f64);
    let r = periodic_bernoulli_integral(m, &f, &scheme)?;
    let c = (if m % 2 == 1 { 1.0 } else { -1.0 }) / factorial_f64(m);
    Ok(EvalResult::new(r.value * c, r.error_bound * c.abs(), r.terms_used, Method::Quadrature))
}

fn check_em_args<T: Scalar>(n: usize, z: T, m: usize) -> Result<()> {
    check_order(n)?;
    if !(z.re() > -1.0) {
        return Err(Error::Domain(format!(
            "Euler-MacLaurin form needs Re z > -1, got {}",
            z.re()
        )));
    }
    if m <= n {
        return Err(Error::Parameter(format!("need m > n, got m = {m}, n = {n}")));
    }
    Ok(())
}

/// `F_{n,r-1}(z) = D^{r-1}{binom(-t,n-1) log((z+t)/(z+1))}` at `t = 1`.
pub fn f_nr<T: Scalar>(n: usize, r: usize, z: T) -> Result<T> {
    check_order(n)?;
    if r == 0 {
        return Err(Error::Parameter("f_nr needs r >= 1".into()));
    }
    if (z + 1.0).abs() == 0.0 {
        return Err(Error::Pole("F_{n,r-1} is singular at z = -1".into()));
    }
    Ok(order_kernel(n).fnr_eval(r - 1, z))
}

/// Euler-MacLaurin expansion of `log G_n(z+1)` of order `m` with the
/// remainder integrated numerically. Exact for every `m > n`.
pub fn log_gn_euler_maclaurin<T: Scalar>(n: usize, z: T, m: usize) -> Result<EvalResult<T>> {
    check_em_args(n, z, m)?;
    check_pole(z)?;
    let ker = order_kernel(n);
    let (head, scale) = ker.head(z);
    let mut value = head;
    let mut mag = scale;
    for r in 2..=m {
        let b = bernoulli_f64(r);
        if b == 0.0 {
            continue;
        }
        let t = ker.fnr_eval(r - 1, z) * (b / factorial_f64(r));
        mag += t.abs();
        value += t;
    }
    let rem = em_remainder(n, z, m)?;
    value -= rem.value;
    let err = rem.error_bound + 4.0 * f64::EPSILON * mag;
    Ok(EvalResult::new(value, err, m, Method::EulerMaclaurin))
}
