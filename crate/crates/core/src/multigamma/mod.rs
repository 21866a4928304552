//! Numeric evaluation of `log G_n(z+1)`.
//!
//! Three independent routes: the Weierstrass product, the higher Stirling
//! asymptotic series, and an Euler-MacLaurin expansion with a numerically
//! integrated remainder. [`log_gn`] dispatches between them and extends the
//! domain with the functional equation `G_n(z+1) = G_{n-1}(z) G_n(z)`.

mod euler_maclaurin;
pub(crate) mod kernel;
mod properties;
mod stirling;
mod weierstrass;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::result::{EvalResult, Method};
use crate::zeta::zeta_deriv_neg;

pub use euler_maclaurin::{em_remainder, f_nr, log_gn_euler_maclaurin};
pub use properties::{vigneras_property_check, PropertyReport};
pub use stirling::{
    higher_stirling_detailed, log_gn_higher_stirling, StirlingTruncation, Truncation,
    SECTOR_DELTA,
};
pub use weierstrass::{log_gn_weierstrass, log_gn_weierstrass_with, WeierstrassOptions, DEFAULT_K};

/// Distance from a negative integer below which `z` is treated as a pole.
pub const POLE_TOLERANCE: f64 = 1e-8;

/// `|z|` from which [`log_gn`] prefers the Stirling series.
pub const STIRLING_RADIUS: f64 = 10.0;

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("order n must be >= 1".into()));
    }
    Ok(())
}

pub(crate) fn check_pole<T: Scalar>(z: T) -> Result<()> {
    if !z.is_finite() {
        return Err(Error::Domain("z must be finite".into()));
    }
    let k = z.re().round();
    if k <= -1.0 && (z - k).abs() < POLE_TOLERANCE {
        return Err(Error::Pole(format!("z = {k} is a pole of log G_n(z+1)")));
    }
    Ok(())
}

fn in_sector<T: Scalar>(z: T) -> bool {
    z.im().atan2(z.re()).abs() < std::f64::consts::PI - SECTOR_DELTA
}

/// `log A = 1/12 - ζ'(-1)`, the Glaisher-Kinkelin constant.
pub fn kinkelin_constant() -> f64 {
    1.0 / 12.0 - zeta_deriv_neg(1)
}

/// Method selector for [`GnRequest`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GnMethod {
    Weierstrass,
    Stirling,
    EulerMaclaurin,
    #[default]
    Auto,
}

impl std::str::FromStr for GnMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "weierstrass" | "product" => Ok(GnMethod::Weierstrass),
            "stirling" => Ok(GnMethod::Stirling),
            "euler_maclaurin" | "em" => Ok(GnMethod::EulerMaclaurin),
            "auto" => Ok(GnMethod::Auto),
            other => Err(Error::Parameter(format!("unknown method '{other}'"))),
        }
    }
}

/// A request for `log G_n(z+1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GnRequest {
    pub n: usize,
    pub z: Complex64,
    pub method: GnMethod,
    /// Product length for the Weierstrass route, order `m` for
    /// Euler-MacLaurin, fixed term count for Stirling. `None` picks defaults.
    pub budget: Option<usize>,
}

impl GnRequest {
    pub fn new(n: usize, z: Complex64) -> Self {
        GnRequest { n, z, method: GnMethod::Auto, budget: None }
    }

    pub fn method(mut self, method: GnMethod) -> Self {
        self.method = method;
        self
    }

    pub fn budget(mut self, budget: usize) -> Self {
        self.budget = Some(budget);
        self
    }

    pub fn evaluate(&self) -> Result<EvalResult<Complex64>> {
        if self.z.im == 0.0 {
            let r = self.evaluate_with(self.z.re)?;
            return Ok(EvalResult {
                value: Complex64::new(r.value, 0.0),
                error_bound: r.error_bound,
                terms_used: r.terms_used,
                method: r.method,
                converged: r.converged,
            });
        }
        self.evaluate_with(self.z)
    }

    fn evaluate_with<T: Scalar>(&self, z: T) -> Result<EvalResult<T>> {
        let n = self.n;
        match self.method {
            GnMethod::Weierstrass => log_gn_weierstrass(n, z, self.budget.unwrap_or(DEFAULT_K)),
            GnMethod::Stirling => {
                let t = self.budget.map_or(Truncation::Auto, Truncation::Fixed);
                log_gn_higher_stirling(n, z, t)
            }
            GnMethod::EulerMaclaurin => log_gn_euler_maclaurin(n, z, self.budget.unwrap_or(n + 2)),
            GnMethod::Auto => log_gn(n, z),
        }
    }
}

/// `log G_n(z+1)` with automatic method choice.
///
/// For real `z` below `-1` the value is `log|G_n(z+1)|`.
///
/// `|z| ≥ 10` inside the sector uses the Stirling series, `Re z > -1` uses
/// Euler-MacLaurin with `m = n + 2`, anything else steps right with
/// `log G_n(z+1) = log G_n(z+2) - log G_{n-1}(z+1)` and `G_0(w) = w`.
pub fn log_gn<T: Scalar>(n: usize, z: T) -> Result<EvalResult<T>> {
    check_order(n)?;
    check_pole(z)?;
    log_gn_ladder(n, z)
}

fn log_gn_ladder<T: Scalar>(n: usize, z: T) -> Result<EvalResult<T>> {
    if n == 0 {
        return Ok(EvalResult::new((z + 1.0).ln_mod(), 0.0, 0, Method::ClosedForm));
    }
    if z.abs() >= STIRLING_RADIUS && in_sector(z) {
        if let Ok(r) = log_gn_higher_stirling(n, z, Truncation::Auto) {
            if r.error_bound.is_finite() {
                return Ok(r);
            }
        }
    }
    if z.re() > -1.0 {
        return log_gn_euler_maclaurin(n, z, n + 2);
    }
    let right = log_gn_ladder(n, z + 1.0)?;
    let lower = log_gn_ladder(n - 1, z)?;
    Ok(right.combine(&lower, -1.0).with_method(Method::Recursion))
}
