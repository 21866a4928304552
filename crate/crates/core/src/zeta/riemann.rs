use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::bernoulli_f64;
use crate::numerics::{factorial_f64, periodic_bernoulli_integral, BernoulliIntegrand, PanelScheme};
use crate::result::{EvalResult, Method};

/// `[a]_p` and its derivative in `a`.
pub(crate) fn falling_with_deriv(a: f64, p: usize) -> (f64, f64) {
    let (mut v, mut d) = (1.0, 0.0);
    for i in 0..p {
        let f = a - i as f64;
        d = d * f + v;
        v *= f;
    }
    (v, d)
}

/// `f(t) = D^order (t^a log t)`, with
/// `D^p (t^a log t) = [a]_p t^{a-p} log t + (∂_a [a]_p) t^{a-p}`.
struct PowerLog {
    a: f64,
    order: usize,
}

impl PowerLog {
    fn deriv(&self, p: usize, t: f64) -> f64 {
        let (v, d) = falling_with_deriv(self.a, p);
        let pw = t.powf(self.a - p as f64);
        pw * (v * t.ln() + d)
    }
}

impl BernoulliIntegrand for PowerLog {
    type Value = f64;
    fn value(&self, t: f64) -> f64 {
        self.deriv(self.order, t)
    }
    fn derivative(&self, i: usize, t: f64) -> Option<f64> {
        Some(self.deriv(self.order + i, t))
    }
}

/// `ζ'(s)` by Euler-MacLaurin of order `n_terms`:
///
/// `ζ'(s) = -1/(s-1)^2 + Σ_{r=1}^n B_r/r! D^{r-1}(t^{-s} log t)|_{t=1}
///   + (-1)^n/n! ∫_1^∞ B̄_n(t) D^n(t^{-s} log t) dt`.
///
/// Valid for `s > 1 - n`.
pub fn riemann_zeta_deriv(s: f64, n_terms: usize) -> Result<EvalResult> {
    if s == 1.0 {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    let n = n_terms;
    let p = s + n as f64;
    if n == 0 || p <= 1.0 {
        return Err(Error::Parameter(format!(
            "order {n} too small for s = {s}: need s > 1 - n"
        )));
    }
    let a = -s;
    let mut head = -1.0 / ((s - 1.0) * (s - 1.0));
    let mut scale = head.abs();
    for r in 1..=n {
        let b = bernoulli_f64(r);
        if b == 0.0 {
            continue;
        }
        let (_, d) = falling_with_deriv(a, r - 1);
        let term = b / factorial_f64(r) * d;
        head += term;
        scale += term.abs();
    }
    let f = PowerLog { a, order: n };
    let scheme = PanelScheme::default().with_tail_exponent(p);
    let integral = periodic_bernoulli_integral(n, &f, &scheme)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let nf = factorial_f64(n);
    let value = head + sign * integral.value / nf;
    let err = integral.error_bound / nf + 4.0 * f64::EPSILON * scale;
    Ok(EvalResult::new(value, err, integral.terms_used, Method::EulerMaclaurin))
}

const CACHE_J: usize = 32;

fn cached_table() -> &'static Vec<EvalResult> {
    static T: OnceLock<Vec<EvalResult>> = OnceLock::new();
    T.get_or_init(|| {
        (0..=CACHE_J)
            .map(|j| riemann_zeta_deriv(-(j as f64), j + 2).expect("valid order"))
            .collect()
    })
}

/// `ζ'(-j)` with its error estimate, via the order `j + 2` expansion.
pub fn zeta_deriv_neg_eval(j: usize) -> EvalResult {
    if j <= CACHE_J {
        cached_table()[j]
    } else {
        riemann_zeta_deriv(-(j as f64), j + 2).expect("valid order")
    }
}

/// `ζ'(-j)`.
pub fn zeta_deriv_neg(j: usize) -> f64 {
    zeta_deriv_neg_eval(j).value
}

/// `C_j = -Σ_{r=1}^{n+1} B_r/r! D^{r-1}(t^j log t)|_{t=1}
///   + (-1)^n/(n+1)! ∫_1^∞ B̄_{n+1}(t) D^{n+1}(t^j log t) dt`,
/// computed directly from the integral, independently of [`zeta_deriv_neg`].
pub fn c_constant(j: usize, n_for_integral: usize) -> Result<EvalResult> {
    let n = n_for_integral;
    if n < j + 1 {
        return Err(Error::Divergent(format!(
            "C_{j} needs n >= {}: integrand t^(j-n-1) does not decay fast enough",
            j + 1
        )));
    }
    let a = j as f64;
    let mut head = 0.0;
    let mut scale = 0.0;
    for r in 1..=n + 1 {
        let b = bernoulli_f64(r);
        if b == 0.0 {
            continue;
        }
        let (_, d) = falling_with_deriv(a, r - 1);
        let term = b / factorial_f64(r) * d;
        head -= term;
        scale += term.abs();
    }
    let f = PowerLog { a, order: n + 1 };
    let scheme = PanelScheme::default().with_tail_exponent((n + 1 - j) as f64);
    let integral = periodic_bernoulli_integral(n + 1, &f, &scheme)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let nf = factorial_f64(n + 1);
    let value = head + sign * integral.value / nf;
    let err = integral.error_bound / nf + 4.0 * f64::EPSILON * scale;
    Ok(EvalResult::new(value, err, integral.terms_used, Method::EulerMaclaurin))
}

/// Table of `ζ'(-j)` for `j = 0..=j_max`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZetaDerivTable {
    pub values: Vec<f64>,
    /// Estimated absolute error of each entry.
    pub precision_note: Vec<f64>,
}

pub fn zeta_deriv_table(j_max: usize) -> ZetaDerivTable {
    let r: Vec<EvalResult> = (0..=j_max).map(zeta_deriv_neg_eval).collect();
    ZetaDerivTable {
        values: r.iter().map(|e| e.value).collect(),
        precision_note: r.iter().map(|e| e.error_bound).collect(),
    }
}
