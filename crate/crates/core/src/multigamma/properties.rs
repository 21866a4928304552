use serde::Serialize;

use super::{check_order, log_gn};
use crate::error::{Error, Result};
use crate::numerics::binom_f64;

/// Residuals of the four conditions characterising the hierarchy `G_n`.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub n: usize,
    pub grid: Vec<f64>,
    /// `|log G_n(z+2) - log G_{n-1}(z+1) - log G_n(z+1)|` per grid point,
    /// relative to the largest term when that exceeds one.
    pub functional_equation: Vec<f64>,
    /// `|log G_n(1)|`.
    pub unit_value: f64,
    /// Finite-difference `(n+1)`-th derivative of `log G_n(z+1)` per grid point.
    pub derivative: Vec<f64>,
    /// Step used for the finite differences.
    pub step: f64,
    /// `|log G_1(z+2) - log G_1(z+1) - log(z+1)|`, the `G_0(z) = z` base.
    pub base: Vec<f64>,
}

impl PropertyReport {
    pub fn max_functional_residual(&self) -> f64 {
        self.functional_equation.iter().fold(0.0, |a, &b| a.max(b))
    }

    pub fn min_derivative(&self) -> f64 {
        self.derivative.iter().fold(f64::INFINITY, |a, &b| a.min(b))
    }

    pub fn max_base_residual(&self) -> f64 {
        self.base.iter().fold(0.0, |a, &b| a.max(b))
    }

    /// All conditions hold to the given tolerances.
    pub fn holds(&self, residual_tol: f64, derivative_tol: f64) -> bool {
        self.max_functional_residual() < residual_tol
            && self.unit_value < residual_tol
            && self.max_base_residual() < residual_tol
            && self.min_derivative() >= -derivative_tol
    }
}

fn relative_residual(a: f64, b: f64, c: f64) -> f64 {
    (a - b - c).abs() / a.abs().max(b.abs()).max(c.abs()).max(1.0)
}

/// `log G_n(z+1)` on the real axis.
fn lg(n: usize, z: f64) -> Result<f64> {
    if n == 0 {
        return Ok((z + 1.0).abs().ln());
    }
    log_gn(n, z).map(|r| r.value)
}

/// Central `(n+1)`-th difference of `log G_n(z+1)` with step `h`.
fn nth_difference(n: usize, z: f64, h: f64) -> Result<f64> {
    let p = n + 1;
    let mut acc = 0.0;
    for i in 0..=p {
        let x = z + (i as f64 - p as f64 / 2.0) * h;
        let c = binom_f64(p, i);
        let v = lg(n, x)?;
        acc += if (p - i) % 2 == 0 { c * v } else { -c * v };
    }
    Ok(acc / h.powi(p as i32))
}

/// Checks the functional equation, the normalisation `G_n(1) = 1`, the
/// sign of the `(n+1)`-th derivative of `log G_n(z+1)` and the base
/// `G_0(z) = z` on a grid of points `z ≥ 0`.
pub fn vigneras_property_check(n: usize, grid: &[f64]) -> Result<PropertyReport> {
    check_order(n)?;
    if let Some(z) = grid.iter().find(|z| !(**z >= 0.0) || !z.is_finite()) {
        return Err(Error::Domain(format!("grid points must be finite and >= 0, got {z}")));
    }
    let p = n + 1;
    // balances truncation O(h^2) against rounding 2^p ε / h^p at a 1e-6 target
    let step = 1e-2f64.max((f64::EPSILON * 2f64.powi(p as i32) / 1e-6).powf(1.0 / p as f64));
    let mut functional_equation = Vec::with_capacity(grid.len());
    let mut derivative = Vec::with_capacity(grid.len());
    let mut base = Vec::with_capacity(grid.len());
    for &z in grid {
        let a = lg(n, z + 1.0)?;
        let b = lg(n - 1, z)?;
        let c = lg(n, z)?;
        functional_equation.push(relative_residual(a, b, c));
        derivative.push(nth_difference(n, z, step)?);
        let a1 = lg(1, z + 1.0)?;
        let c1 = lg(1, z)?;
        base.push(relative_residual(a1, (z + 1.0).ln(), c1));
    }
    Ok(PropertyReport {
        n,
        grid: grid.to_vec(),
        functional_equation,
        unit_value: lg(n, 0.0)?.abs(),
        derivative,
        step,
        base,
    })
}
