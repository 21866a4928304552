use serde::Serialize;

use crate::numerics::Scalar;

/// Identifies the algorithm that produced an [`EvalResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Weierstrass,
    Stirling,
    EulerMaclaurin,
    Recursion,
    Product,
    Moak,
    ClosedForm,
    Series,
    Quadrature,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Weierstrass => "weierstrass",
            Method::Stirling => "stirling",
            Method::EulerMaclaurin => "euler_maclaurin",
            Method::Recursion => "recursion",
            Method::Product => "product",
            Method::Moak => "moak",
            Method::ClosedForm => "closed_form",
            Method::Series => "series",
            Method::Quadrature => "quadrature",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A numeric value together with an estimate of its truncation error.
///
/// `error_bound` is an upper estimate, not a rigorous bound. `converged` is
/// false when a term cap was hit before the stopping rule fired.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult<T = f64> {
    pub value: T,
    pub error_bound: f64,
    pub terms_used: usize,
    pub method: Method,
    pub converged: bool,
}

impl<T: Scalar> EvalResult<T> {
    pub fn new(value: T, error_bound: f64, terms_used: usize, method: Method) -> Self {
        EvalResult { value, error_bound, terms_used, method, converged: true }
    }

    pub fn exact(value: T, method: Method) -> Self {
        EvalResult::new(value, 0.0, 0, method)
    }

    /// Adds `other` to `self`, combining error bounds and flags.
    pub fn combine(mut self, other: &EvalResult<T>, sign: f64) -> Self {
        self.value += other.value * sign;
        self.error_bound += other.error_bound;
        self.terms_used += other.terms_used;
        self.converged &= other.converged;
        self
    }

    pub fn with_method(mut self, method: Method) -> Self {
        self.method = method;
        self
    }
}
