use super::check_pole;
use super::kernel::{eval_combo, order_kernel};
use crate::error::Result;
use crate::numerics::{CompensatedSum, Scalar};
use crate::result::{EvalResult, Method};
use crate::zeta::hurwitz_zeta;

/// Default product length.
pub const DEFAULT_K: usize = 1_000_000;

/// Options for the Weierstrass product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeierstrassOptions {
    /// Number of product factors.
    pub k: usize,
    /// Add `Σ_{k>K}` in closed form from the `1/k` expansion of the factors,
    /// `Σ_p c_p(z) ζ(p, K+1)`. Without it the truncation error is of order
    /// `|a_K| K`.
    pub tail_correction: bool,
}

impl Default for WeierstrassOptions {
    fn default() -> Self {
        WeierstrassOptions { k: DEFAULT_K, tail_correction: true }
    }
}

/// `log G_n(z+1) = F_n(z) + Σ_{k≥1} [-binom(-k,n-1) log(1+z/k) + Φ_n(z,k)]`,
/// principal branch per factor, truncated at `K` factors.
pub fn log_gn_weierstrass<T: Scalar>(n: usize, z: T, k: usize) -> Result<EvalResult<T>> {
    log_gn_weierstrass_with(n, z, WeierstrassOptions { k, ..Default::default() })
}

pub fn log_gn_weierstrass_with<T: Scalar>(
    n: usize,
    z: T,
    opts: WeierstrassOptions,
) -> Result<EvalResult<T>> {
    super::check_order(n)?;
    check_pole(z)?;
    if opts.k == 0 {
        return Err(crate::Error::Parameter("product length must be >= 1".into()));
    }
    let ker = order_kernel(n);
    let s = &ker.stirling;
    let (f_n, f_scale) = eval_combo(&ker.f_n, z);

    let mut acc = CompensatedSum::new();
    let mut mag = 0.0;
    let mut last = T::zero();
    let mut sl = vec![T::zero(); n + 2];
    let mut u = vec![T::zero(); n];
    for k in 1..=opts.k {
        let kf = k as f64;
        let x = z / kf;
        // sl[l] = (-1)^{l-1} x^l / l, l = 1..=n+1
        let mut pw = T::one();
        for (l, slot) in sl.iter_mut().enumerate().skip(1) {
            pw *= x;
            let v = pw / l as f64;
            *slot = if l % 2 == 1 { v } else { -v };
        }
        // u[r] = Σ_{l≥r+2} sl[l] = log(1+x) - Σ_{l≤r+1} sl[l]
        if x.abs() < 0.5 {
            let mut tail = T::zero();
            let mut l = n + 1;
            let mut p = pw;
            loop {
                let v = p / l as f64;
                let term = if l % 2 == 1 { v } else { -v };
                tail += term;
                if term.abs() <= 1e-17 * tail.abs() || l > n + 80 {
                    break;
                }
                p *= x;
                l += 1;
            }
            u[n - 1] = tail;
            for r in (0..n - 1).rev() {
                u[r] = u[r + 1] + sl[r + 2];
            }
        } else {
            let mut rest = x.ln_1p();
            for r in 0..n {
                rest -= sl[r + 1];
                u[r] = rest;
            }
        }
        let mut a = T::zero();
        let mut kr = 1.0;
        for r in 0..n {
            if s[r] != 0.0 {
                let c = if r % 2 == 0 { -s[r] } else { s[r] } * kr;
                let t = u[r] * c;
                mag += t.abs();
                a += t;
            }
            kr *= kf;
        }
        acc.add(a);
        last = a;
    }

    let kmax = opts.k as f64;
    let mut err = 4.0 * f64::EPSILON * mag + acc.rounding_est() + 4.0 * f64::EPSILON * f_scale;
    let zabs = z.abs();
    if opts.tail_correction && zabs < 0.5 * (kmax + 1.0) {
        let (tail, tail_err) = weierstrass_tail(s, z, kmax + 1.0)?;
        acc.add(tail);
        err += tail_err;
    } else {
        err += last.abs() * kmax;
    }
    Ok(EvalResult::new(f_n + acc.total(), err, opts.k, Method::Weierstrass))
}

/// `Σ_{k≥a} a_k = Σ_{p≥2} c_p(z) ζ(p, a)` with
/// `c_p(z) = (-1)^p Σ_r s_r z^{r+p}/(r+p)`.
fn weierstrass_tail<T: Scalar>(s: &[f64], z: T, a: f64) -> Result<(T, f64)> {
    let mut tail = T::zero();
    let mut zp = z * z;
    let mut err = f64::INFINITY;
    for p in 2..200usize {
        let mut c = T::zero();
        let mut zr = zp;
        for (r, &sr) in s.iter().enumerate() {
            if sr != 0.0 {
                c += zr * (sr / (r + p) as f64);
            }
            zr *= z;
        }
        if p % 2 == 1 {
            c = -c;
        }
        let h = hurwitz_zeta(p as f64, a, 0)?.value;
        let term = c * h;
        tail += term;
        err = term.abs();
        if err <= 1e-18 * tail.abs().max(1e-300) {
            break;
        }
        zp *= z;
    }
    Ok((tail, err))
}
