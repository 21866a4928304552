use super::scalar::Scalar;
use super::summation::CompensatedSum;
use crate::result::{EvalResult, Method};

/// Safety factor applied to the tail estimate.
const SAFETY: f64 = 10.0;

/// Sums `Σ_{k≥1} term(k)` with compensation.
///
/// Stops once `|term| < tol·|partial|` for three consecutive indices. The
/// error bound is `10 · max(|last term|, tail)` where the tail is estimated
/// from the observed decay: geometric when successive terms shrink by a fixed
/// ratio, algebraic `k^{-p}` otherwise. Hitting `hard_cap`, or an observed
/// decay too slow to sum (`p ≤ 1`), clears `converged`.
pub fn series_sum<T: Scalar, F: FnMut(u64) -> T>(
    mut term: F,
    tol: f64,
    hard_cap: u64,
) -> EvalResult<T> {
    let mut acc = CompensatedSum::new();
    let mut small_run = 0;
    let mut last = 0.0f64;
    let mut prev = 0.0f64;
    // |a_k| at the latest power-of-two index, and at the one before.
    let mut marks = [(0u64, 0.0f64); 2];
    let mut k = 0u64;
    let mut stopped = false;
    while k < hard_cap {
        k += 1;
        let t = term(k);
        acc.add(t);
        prev = last;
        last = t.abs();
        if k.is_power_of_two() {
            marks = [marks[1], (k, last)];
        }
        if last < tol * acc.total().abs() {
            small_run += 1;
            if small_run >= 3 {
                stopped = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    let (tail, decaying) = tail_estimate(k, last, prev, marks);
    let mut r = EvalResult::new(
        acc.total(),
        SAFETY * last.max(tail) + acc.rounding_est(),
        k as usize,
        Method::Series,
    );
    r.converged = stopped && decaying;
    r
}

fn tail_estimate(k: u64, last: f64, prev: f64, marks: [(u64, f64); 2]) -> (f64, bool) {
    if last == 0.0 {
        return (0.0, true);
    }
    if prev > 0.0 {
        let rho = last / prev;
        if rho < 0.9 {
            return (last * rho / (1.0 - rho), true);
        }
    }
    let (kp, ap) = if (k as f64) >= 1.5 * marks[1].0 as f64 { marks[1] } else { marks[0] };
    if kp == 0 || ap == 0.0 || kp >= k {
        return (f64::INFINITY, false);
    }
    let p = (ap / last).ln() / (k as f64 / kp as f64).ln();
    if p <= 1.05 {
        return (f64::INFINITY, false);
    }
    (last * k as f64 / (p - 1.0), true)
}
