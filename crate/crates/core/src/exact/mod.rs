//! Exact rational combinatorics and the symbolic coefficient generators.

pub mod bernoulli;
pub mod combinatorics;
pub mod poly;
pub mod rational;
pub mod stirling_formula;
pub mod symbolic;
pub mod weierstrass;

pub use bernoulli::{bernoulli_f64, bernoulli_number, bernoulli_poly, periodic_bernoulli};
pub use combinatorics::{
    binomial_poly, falling_factorial_poly, g_polynomials, neg_derivative, stirling_first,
    stirling_row_vec,
};
pub use poly::Poly;
pub use rational::{format_ratio, int, parse_ratio, rat, to_f64, Rational};
pub use stirling_formula::{higher_stirling_coeffs, CoeffBundle, SeriesTerm};
pub use symbolic::{ConstTag, LaurentInK, SymbolicConstantCombo};
pub use weierstrass::{f_n_symbolic, p_poly, phi_jr, phi_n, q_poly, weierstrass_bundle, WeierstrassBundle};
