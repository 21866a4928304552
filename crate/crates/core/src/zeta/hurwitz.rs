use crate::error::{Error, Result};
use crate::exact::bernoulli_f64;
use crate::numerics::{factorial_f64, CompensatedSum};
use crate::result::{EvalResult, Method};

const MAX_CORRECTIONS: usize = 30;

fn head_terms(s: f64, z: f64, head: usize) -> usize {
    if head > 0 {
        return head;
    }
    (15.0 + s.abs() - z).max(0.0).ceil() as usize
}

fn check_args(s: f64, z: f64) -> Result<()> {
    if !(z > 0.0) {
        return Err(Error::Domain(format!("Hurwitz zeta needs z > 0, got {z}")));
    }
    if s == 1.0 {
        return Err(Error::Pole("Hurwitz zeta has a pole at s = 1".into()));
    }
    Ok(())
}

/// Rising factorial `(s)_p` and its derivative in `s`.
fn rising_with_deriv(s: f64, p: usize) -> (f64, f64) {
    let (mut v, mut d) = (1.0, 0.0);
    for i in 0..p {
        let f = s + i as f64;
        d = d * f + v;
        v *= f;
    }
    (v, d)
}

/// `ζ(s, z) = Σ_{k≥0} (z+k)^{-s}`: direct sum over `head` terms (0 picks a
/// head long enough that `z + N ≥ 15 + |s|`), then the Euler-MacLaurin tail
/// `a^{1-s}/(s-1) + a^{-s}/2 + Σ_r B_{2r}/(2r)! (s)_{2r-1} a^{-s-2r+1}`.
pub fn hurwitz_zeta(s: f64, z: f64, head: usize) -> Result<EvalResult> {
    check_args(s, z)?;
    let n = head_terms(s, z, head);
    let mut acc = CompensatedSum::new();
    for k in (0..n).rev() {
        acc.add((z + k as f64).powf(-s));
    }
    let a = z + n as f64;
    acc.add(a.powf(1.0 - s) / (s - 1.0));
    acc.add(0.5 * a.powf(-s));
    let mut err = f64::INFINITY;
    let mut used = 0;
    for r in 1..=MAX_CORRECTIONS {
        let (rise, _) = rising_with_deriv(s, 2 * r - 1);
        let term = bernoulli_f64(2 * r) / factorial_f64(2 * r) * rise * a.powf(-s - 2.0 * r as f64 + 1.0);
        if term.abs() >= err {
            break;
        }
        if term.abs() < f64::EPSILON * 1e-3 * acc.total().abs() {
            err = term.abs();
            break;
        }
        acc.add(term);
        err = term.abs();
        used = r;
    }
    Ok(EvalResult::new(acc.total(), err + acc.rounding_est(), n + used, Method::EulerMaclaurin))
}

/// `∂_s ζ(s, z)` by term-wise differentiation of the expansion used in
/// [`hurwitz_zeta`].
pub fn hurwitz_zeta_deriv(s: f64, z: f64, head: usize) -> Result<EvalResult> {
    check_args(s, z)?;
    let n = head_terms(s, z, head);
    let mut acc = CompensatedSum::new();
    for k in (0..n).rev() {
        let w = z + k as f64;
        acc.add(-w.ln() * w.powf(-s));
    }
    let a = z + n as f64;
    let la = a.ln();
    acc.add(-la * a.powf(1.0 - s) / (s - 1.0));
    acc.add(-a.powf(1.0 - s) / ((s - 1.0) * (s - 1.0)));
    acc.add(-0.5 * la * a.powf(-s));
    let mut err = f64::INFINITY;
    let mut used = 0;
    for r in 1..=MAX_CORRECTIONS {
        let (rise, drise) = rising_with_deriv(s, 2 * r - 1);
        let pw = a.powf(-s - 2.0 * r as f64 + 1.0);
        let term = bernoulli_f64(2 * r) / factorial_f64(2 * r) * (drise - rise * la) * pw;
        if term.abs() >= err {
            break;
        }
        if term.abs() < f64::EPSILON * 1e-3 * acc.total().abs() {
            err = term.abs();
            break;
        }
        acc.add(term);
        err = term.abs();
        used = r;
    }
    Ok(EvalResult::new(acc.total(), err + acc.rounding_est(), n + used, Method::EulerMaclaurin))
}

/// `ζ'(0, z) = log Γ(z) - log √(2π)`.
pub fn hurwitz_zeta_deriv0(z: f64) -> Result<f64> {
    hurwitz_zeta_deriv(0.0, z, 0).map(|r| r.value)
}
