//! Multiple gamma functions `G_n(z+1)` and their q-analogues `G_n(z+1; q)`.
//!
//! Every quantity here can be computed by at least two independent routes:
//!
//! * [`exact`] generates the rational coefficient structures (higher Stirling
//!   formulas, Weierstrass product exponents) exactly, for any order `n`.
//! * [`multigamma`] evaluates `log G_n(z+1)` by a Weierstrass product, the
//!   higher Stirling asymptotic series, and an Euler-MacLaurin expansion with
//!   a numerically integrated remainder.
//! * [`qgamma`] evaluates `log G_n(z+1; q)` by its infinite product and by an
//!   Euler-MacLaurin expansion, plus the Moak-type form of `log Γ_q`.
//! * [`zeta`] supplies `γ`, `ζ'(-j)`, Hurwitz zeta values and polylogarithms.
//! * [`numerics`] holds the shared floating-point machinery.

pub mod error;
pub mod exact;
pub mod multigamma;
pub mod numerics;
pub mod qgamma;
pub mod result;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::{
    CoeffBundle, ConstTag, LaurentInK, Poly, Rational, SeriesTerm, SymbolicConstantCombo,
};
pub use num_complex::Complex64;
pub use numerics::{PanelScheme, Scalar};
pub use qgamma::QContext;
pub use result::{EvalResult, Method};
