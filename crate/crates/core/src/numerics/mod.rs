//! Shared floating-point machinery.

pub mod quadrature;
pub mod scalar;
pub mod series;
pub mod summation;

pub use quadrature::{
    gauss_legendre, periodic_bernoulli_integral, BernoulliIntegrand, FnIntegrand, PanelScheme,
};
pub use scalar::{RealPoly, Scalar};
pub use series::series_sum;
pub use summation::{compensated_sum, CompensatedSum, SumResult};

/// `n!` as `f64`.
pub fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|v| v as f64).product()
}

/// Binomial coefficient as `f64`.
pub fn binom_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
