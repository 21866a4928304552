use super::{binom_eval, QContext};
use crate::error::{Error, Result};
use crate::multigamma::check_order;
use crate::numerics::{binom_f64, CompensatedSum, Scalar};
use crate::result::{EvalResult, Method};

/// Hard cap on the adaptive product length.
pub const PRODUCT_CAP: usize = 10_000_000;

/// `binom(-k, n-1)`.
fn binom_neg(k: usize, n: usize) -> f64 {
    let b = binom_f64(k + n - 2, n - 1);
    if (n - 1) % 2 == 0 {
        b
    } else {
        -b
    }
}

struct ProductTerms<T: Scalar> {
    n: usize,
    z: T,
    ctx: QContext,
}

impl<T: Scalar> ProductTerms<T> {
    fn head(&self) -> T {
        -(binom_eval(self.z, self.n) * self.ctx.log1mq(1.0))
    }

    /// `-binom(-k,n-1) log((1-q^{z+k})/(1-q^k)) + g_n(z,k) log(1-q^k)`.
    fn term(&self, k: usize) -> Result<T> {
        let kf = k as f64;
        let l = self.ctx.log_q;
        let num = ((self.z + kf) * l).exp_m1();
        if num.abs() < 1e-14 {
            return Err(Error::Pole(format!("1 - q^(z+{k}) vanishes")));
        }
        let den = (kf * l).exp_m1();
        let bk = binom_neg(k, self.n);
        // (1-q^{z+k})/(1-q^k) = 1 + q^k (q^z - 1)/(q^k - 1)
        let ratio_m1 = (self.z * l).exp_m1() * ((kf * l).exp() / den);
        let mut t = ratio_m1.ln_1p() * (-bk);
        if self.n > 1 {
            let g = binom_eval(self.z - kf, self.n - 1) - bk;
            t += g * (-den).ln();
        }
        Ok(t)
    }

    /// Bound on `Σ_{k>K}` from the ratio `q ((K+1)/K)^{n-1}` of successive
    /// terms.
    fn tail(&self, last: f64, k: usize) -> f64 {
        let kf = k as f64;
        let rho = self.ctx.q * ((kf + 1.0) / kf).powi(self.n as i32 - 1);
        if rho >= 1.0 {
            return f64::INFINITY;
        }
        last * rho / (1.0 - rho)
    }
}

/// Truncated product for `log G_n(z+1;q)`:
/// `-binom(z,n) log(1-q) + Σ_{k=1}^K [-binom(-k,n-1) log((1-q^{z+k})/(1-q^k))
///  + g_n(z,k) log(1-q^k)]`, `g_n(z,k) = binom(z-k,n-1) - binom(-k,n-1)`.
pub fn log_qgn_product<T: Scalar>(
    n: usize,
    z: T,
    ctx: &QContext,
    k_max: usize,
) -> Result<EvalResult<T>> {
    check_order(n)?;
    if k_max == 0 {
        return Err(Error::Parameter("product length must be >= 1".into()));
    }
    let p = ProductTerms { n, z, ctx: *ctx };
    let mut acc = CompensatedSum::new();
    acc.add(p.head());
    let mut last = 0.0;
    for k in 1..=k_max {
        let t = p.term(k)?;
        last = t.abs();
        acc.add(t);
    }
    let tail = p.tail(last, k_max);
    let mut e = EvalResult::new(acc.total(), tail + acc.rounding_est(), k_max, Method::Product);
    e.converged = tail.is_finite();
    Ok(e)
}

/// As [`log_qgn_product`], stopping once `|term| < tol |partial|` and the
/// tail bound is below `tol max(|partial|, 1)`, `tol = ctx.series_tol`.
pub fn log_qgn_product_adaptive<T: Scalar>(n: usize, z: T, ctx: &QContext) -> Result<EvalResult<T>> {
    check_order(n)?;
    let p = ProductTerms { n, z, ctx: *ctx };
    let tol = ctx.series_tol.max(f64::EPSILON / 4.0);
    let mut acc = CompensatedSum::new();
    acc.add(p.head());
    let mut k = 0;
    let mut tail = f64::INFINITY;
    while k < PRODUCT_CAP {
        k += 1;
        let t = p.term(k)?;
        acc.add(t);
        let s = acc.total().abs();
        if t.abs() < tol * s || t.abs() < 1e-300 {
            tail = p.tail(t.abs(), k);
            if tail < tol * s.max(1.0) {
                break;
            }
        }
    }
    let mut e = EvalResult::new(acc.total(), tail + acc.rounding_est(), k, Method::Product);
    e.converged = k < PRODUCT_CAP && tail.is_finite();
    Ok(e)
}
