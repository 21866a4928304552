use super::QContext;
use crate::error::{Error, Result};
use crate::exact::bernoulli_f64;
use crate::numerics::{factorial_f64, CompensatedSum, Scalar};
use crate::result::{EvalResult, Method};
use crate::zeta::polylog_eval;

/// `T_r(z) = ∫_1^z (ξ^r/r!) q^ξ log q/(1 - q^ξ) dξ`.
///
/// Uses the polylogarithm closed form
/// `Σ_{s=0}^r ((-1)^s/(r-s)!) log^{-s} q {z^{r-s} Li_{s+1}(q^z) - Li_{s+1}(q)}`.
/// When `δ max(|z|, 1) < 1`, `δ = -log q`, the closed form loses about
/// `r log10(1/δ)` digits to cancellation and the expansion
/// `-(1/r!) Σ_k B_k δ^k/k! (z^{r+k} - 1)/(r+k)` is summed instead.
pub fn t_r_eval<T: Scalar>(r: usize, z: T, ctx: &QContext) -> EvalResult<T> {
    let d = ctx.delta();
    if d * z.abs().max(1.0) < 1.0 {
        t_r_series(r, z, d)
    } else {
        t_r_closed(r, z, ctx)
    }
}

/// `T_r(z)` for real `z > 0`.
pub fn t_r(r: usize, z: f64, ctx: &QContext) -> Result<f64> {
    if r == 0 {
        return Err(Error::Parameter("T_r needs r >= 1".into()));
    }
    if !(z > 0.0) {
        return Err(Error::Domain(format!("T_r needs z > 0, got {z}")));
    }
    let e = t_r_eval(r, z, ctx);
    if !e.converged {
        return Err(Error::Divergent(format!("T_{r}({z}) polylog series did not converge")));
    }
    Ok(e.value)
}

pub(crate) fn t_r_closed<T: Scalar>(r: usize, z: T, ctx: &QContext) -> EvalResult<T> {
    let qz = ctx.pow(z);
    let q = T::from_f64(ctx.q);
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut terms = 0;
    let mut converged = true;
    let mut inv_l = 1.0;
    for s in 0..=r {
        let a = polylog_eval(s + 1, qz);
        let b = polylog_eval(s + 1, q);
        converged &= a.converged && b.converged;
        terms += a.terms_used + b.terms_used;
        let c = (if s % 2 == 0 { inv_l } else { -inv_l }) / factorial_f64(r - s);
        let zp = if r == s { T::one() } else { z.powi((r - s) as i32) };
        let t = (zp * a.value - b.value) * c;
        err += c.abs() * (zp.abs() * a.error_bound + b.error_bound);
        acc.add(t);
        inv_l /= ctx.log_q;
    }
    let mut e = EvalResult::new(acc.total(), err + acc.rounding_est(), terms, Method::ClosedForm);
    e.converged = converged;
    e
}

pub(crate) fn t_r_series<T: Scalar>(r: usize, z: T, delta: f64) -> EvalResult<T> {
    let mut acc = CompensatedSum::new();
    let mut dk = 1.0; // δ^k/k!
    let mut zp = z.powi(r as i32);
    let mut last = f64::INFINITY;
    let mut k = 0;
    while k < 400 {
        let b = bernoulli_f64(k);
        if b != 0.0 {
            let t = (zp - 1.0) * (b * dk / (r + k) as f64);
            acc.add(t);
            last = t.abs();
            if k > 2 && last <= 0.25 * f64::EPSILON * acc.abs_total().max(1e-300) {
                break;
            }
        }
        k += 1;
        dk *= delta / k as f64;
        zp *= z;
    }
    let scale = -1.0 / factorial_f64(r);
    EvalResult::new(
        acc.total() * scale,
        (last + acc.rounding_est()) * scale.abs(),
        k + 1,
        Method::Series,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    fn by_quadrature(r: usize, z: f64, q: f64) -> f64 {
        let l = q.ln();
        let f = |x: f64| x.powi(r as i32) / factorial_f64(r) * q.powf(x) * l / (1.0 - q.powf(x));
        let a = simpson(&f, 1.0, z, 2000);
        let b = simpson(&f, 1.0, z, 4000);
        b + (b - a) / 15.0
    }

    #[test]
    fn vanishes_at_one() {
        let c = QContext::new(0.3).unwrap();
        for r in 1..5 {
            assert!(t_r(r, 1.0, &c).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_against_quadrature() {
        for &q in &[0.3, 0.5, 0.7, 0.95] {
            let c = QContext::new(q).unwrap();
            for &z in &[0.5, 1.2, 2.0, 2.5, 4.0] {
                for r in 1..=4 {
                    let v = t_r(r, z, &c).unwrap();
                    let o = by_quadrature(r, z, q);
                    assert!((v - o).abs() < 1e-9, "q={q} z={z} r={r}: {v} vs {o}");
                }
            }
        }
    }

    #[test]
    fn routes_agree() {
        let c = QContext::new(0.8).unwrap();
        for &z in &[0.5, 1.5, 3.0] {
            for r in 1..=4 {
                let a = t_r_closed(r, z, &c).value;
                let b = t_r_series(r, z, c.delta()).value;
                assert!((a - b).abs() < 1e-11, "z={z} r={r}: {a} vs {b}");
            }
        }
    }

    #[test]
    fn negative_for_z_above_one() {
        for &q in &[0.1, 0.5, 0.9, 0.999] {
            let c = QContext::new(q).unwrap();
            assert!(t_r(1, 2.0, &c).unwrap() < 0.0);
        }
    }
}
