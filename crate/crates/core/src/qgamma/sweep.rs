use num_complex::Complex64;
use serde::Serialize;

use super::{log_qgn_euler_maclaurin, QContext};
use crate::error::{Error, Result};
use crate::multigamma::log_gn;
use crate::result::EvalResult;

/// One row of a classical-limit sweep.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub q: f64,
    /// `|log G_n(z+1;q) - log G_n(z+1)|`.
    pub delta: f64,
    /// Sum of the error estimates of both values.
    pub error_bound: f64,
    pub terms_used: usize,
    pub method: String,
    pub converged: bool,
}

/// Result of [`classical_limit_sweep`].
#[derive(Clone, Debug, Serialize)]
pub struct SweepTable {
    pub n: usize,
    pub z: [f64; 2],
    /// `log G_n(z+1)` used as the limit.
    pub classical: f64,
    pub classical_error_bound: f64,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    /// CSV with columns `q, delta, error_bound, terms_used, method, converged`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.rows {
            w.serialize(r).map_err(|e| Error::Parameter(e.to_string()))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parameter(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Parameter(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sweep table serialises")
    }

    /// Deltas in row order.
    pub fn deltas(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.delta).collect()
    }
}

fn row<T: crate::numerics::Scalar>(q: f64, e: EvalResult<T>, classical: &EvalResult<T>) -> SweepRow {
    SweepRow {
        q,
        delta: (e.value - classical.value).abs(),
        error_bound: e.error_bound + classical.error_bound,
        terms_used: e.terms_used,
        method: e.method.to_string(),
        converged: e.converged && classical.converged,
    }
}

/// `Δ(q) = |log G_n(z+1;q) - log G_n(z+1)|` along `q_list`, using the
/// Euler-MacLaurin form with `m = n + 2` on the q-side.
pub fn classical_limit_sweep(n: usize, z: Complex64, q_list: &[f64]) -> Result<SweepTable> {
    let ctxs = q_list.iter().map(|&q| QContext::new(q)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(q_list.len());
    let (classical, classical_error_bound);
    if z.im == 0.0 {
        let c = log_gn(n, z.re)?;
        for ctx in &ctxs {
            rows.push(row(ctx.q, log_qgn_euler_maclaurin(n, z.re, ctx, n + 2)?, &c));
        }
        (classical, classical_error_bound) = (c.value, c.error_bound);
    } else {
        let c = log_gn(n, z)?;
        for ctx in &ctxs {
            rows.push(row(ctx.q, log_qgn_euler_maclaurin(n, z, ctx, n + 2)?, &c));
        }
        (classical, classical_error_bound) = (c.value.re, c.error_bound);
    }
    Ok(SweepTable { n, z: [z.re, z.im], classical, classical_error_bound, rows })
}
