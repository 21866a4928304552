use super::kernel::{horner_inverse, order_kernel, R_MAX};
use super::{check_order, check_pole};
use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::result::{EvalResult, Method};

/// Default half-angle excluded around the negative real axis.
pub const SECTOR_DELTA: f64 = 0.1;

/// How many asymptotic series terms to include.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Truncation {
    /// Stop before the smallest-magnitude term once the terms decay.
    #[default]
    Auto,
    /// Include exactly `r = 1..=r_stop`.
    Fixed(usize),
}

/// Where the series was cut and the size of the first omitted term.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StirlingTruncation {
    pub r_stop: usize,
    pub est_error: f64,
}

/// Higher Stirling formula for `log G_n(z+1)`.
pub fn log_gn_higher_stirling<T: Scalar>(
    n: usize,
    z: T,
    trunc: Truncation,
) -> Result<EvalResult<T>> {
    higher_stirling_detailed(n, z, trunc).map(|(r, _)| r)
}

/// As [`log_gn_higher_stirling`], also reporting the truncation point.
pub fn higher_stirling_detailed<T: Scalar>(
    n: usize,
    z: T,
    trunc: Truncation,
) -> Result<(EvalResult<T>, StirlingTruncation)> {
    check_order(n)?;
    check_pole(z)?;
    let arg = z.im().atan2(z.re());
    if arg.abs() >= std::f64::consts::PI - SECTOR_DELTA {
        return Err(Error::Domain(format!(
            "arg z = {arg:.3} outside the sector |arg z| < pi - {SECTOR_DELTA}"
        )));
    }
    let ker = order_kernel(n);
    let (head, scale) = ker.head(z);
    let w = (z + 1.0).recip();
    let term = |r: usize| horner_inverse(&ker.series[r], w);

    let mut sum = head;
    let mut r_stop = 0;
    let est_error;
    match trunc {
        Truncation::Fixed(r_max) => {
            if r_max > R_MAX {
                return Err(Error::Parameter(format!("at most {R_MAX} series terms")));
            }
            for r in 1..=r_max {
                sum += term(r);
            }
            r_stop = r_max;
            est_error = if r_max < R_MAX { term(r_max + 1).abs() } else { f64::INFINITY };
        }
        Truncation::Auto => {
            // Terms with 2r - 1 < n are O(1/z) and not yet decaying.
            let r_decay = (n + 1).div_ceil(2);
            let mut cur = term(1);
            let mut err = f64::INFINITY;
            for r in 1..=R_MAX {
                let next = if r < R_MAX { term(r + 1) } else { T::from_f64(f64::INFINITY) };
                if r >= r_decay && next.abs() >= cur.abs() {
                    // cur is the smallest term: omit it
                    err = cur.abs();
                    break;
                }
                sum += cur;
                r_stop = r;
                if r >= r_decay && cur.abs() <= 1e-3 * f64::EPSILON * sum.abs() {
                    err = next.abs();
                    break;
                }
                cur = next;
            }
            est_error = err;
        }
    }
    let err = est_error + 4.0 * f64::EPSILON * scale;
    Ok((
        EvalResult::new(sum, err, r_stop, Method::Stirling),
        StirlingTruncation { r_stop, est_error },
    ))
}
