use crate::error::{Error, Result};
use crate::numerics::{series_sum, Scalar};
use crate::result::{EvalResult, Method};

/// Term cap for the defining series.
pub const POLYLOG_CAP: u64 = 10_000_000;

/// `Li_r(x) = Σ_{k≥1} x^k / k^r` for real or complex `|x| < 1`.
///
/// `r = 1` uses `-log(1 - x)`. Otherwise the series runs until terms drop
/// below the rounding level; `converged` is cleared at the term cap.
pub fn polylog_eval<T: Scalar>(r: usize, x: T) -> EvalResult<T> {
    if r == 1 {
        return EvalResult::new(-(-x).ln_1p(), 0.0, 0, Method::ClosedForm);
    }
    let mut pw = T::one();
    series_sum(
        |k| {
            pw *= x;
            pw / (k as f64).powi(r as i32)
        },
        0.25 * f64::EPSILON,
        POLYLOG_CAP,
    )
}

/// `Li_r(x)` for real `0 < x < 1`.
pub fn polylog(r: usize, x: f64) -> Result<f64> {
    if r == 0 {
        return Err(Error::Parameter("polylog order must be >= 1".into()));
    }
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!("polylog needs 0 < x < 1, got {x}")));
    }
    let e = polylog_eval(r, x);
    if !e.converged {
        return Err(Error::Divergent(format!("Li_{r}({x}) did not converge in {POLYLOG_CAP} terms")));
    }
    Ok(e.value)
}
