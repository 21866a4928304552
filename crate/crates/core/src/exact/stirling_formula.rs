use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bernoulli::bernoulli_number;
use super::combinatorics::{binomial_poly, g_polynomials, neg_derivative};
use super::poly::Poly;
use super::rational::{binomial, factorial, int, Rational};
use super::symbolic::{ConstTag, SymbolicConstantCombo};

/// One term of the asymptotic series: `F_{n,2r-1}(z) = numerator(z) / (z+1)^{2r-1}`.
///
/// The full series term is `B_{2r}/(2r)! · F_{n,2r-1}(z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub r: usize,
    pub numerator: Poly,
}

/// Exact data of the higher Stirling formula
///
/// `log G_n(z+1) ~ log_coeff(z) log(z+1) + poly_part(z) + const_part(z)
///   + Σ_r B_{2r}/(2r)! F_{n,2r-1}(z)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoeffBundle {
    pub n: usize,
    pub log_coeff: Poly,
    pub poly_part: Poly,
    pub const_part: SymbolicConstantCombo,
    pub series_terms: Vec<SeriesTerm>,
}

impl CoeffBundle {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("bundle serializes")
    }
}

/// `binom(z+1, n) + Σ_{r=1}^n B_r/r! (-D)^{r-1} binom(z, n-1)`.
pub fn log_coefficient(n: usize) -> Poly {
    let b = binomial_poly(n - 1);
    let mut p = binomial_poly(n).shift(&int(1));
    for r in 1..=n {
        let c = bernoulli_number(r) / Rational::from_integer(factorial(r as u32));
        p = p + neg_derivative(&b, r - 1).scale(&c);
    }
    p
}

/// `-Σ_{r=1}^n [(-D)^{r-1} binom(z, n-1)] ((z+1)^r - 1)/(r! r)`.
pub fn polynomial_part(n: usize) -> Poly {
    let b = binomial_poly(n - 1);
    let zp1 = Poly::linear(int(1));
    let mut p = Poly::zero();
    for r in 1..=n {
        let c = int(1) / Rational::from_integer(factorial(r as u32) * BigInt::from(r));
        let w = zp1.pow(r as u32) - Poly::one();
        p = p - (&neg_derivative(&b, r - 1) * &w).scale(&c);
    }
    p
}

/// `-Σ_j G_{n,j}(z) (ζ'(-j) + 1/(j+1)^2)` over the constant basis.
pub fn constant_part(n: usize) -> SymbolicConstantCombo {
    let mut c = SymbolicConstantCombo::new();
    for (j, g) in g_polynomials(n).iter().enumerate() {
        c.add(ConstTag::ZetaD(j), &-g);
        c.add(ConstTag::One, &-g.scale(&(int(1) / int((j as i64 + 1).pow(2)))));
    }
    c
}

/// `b_i = D^i binom(-t, n-1)` at `t = 1`, for `i = 0..n-1` (zero beyond).
pub fn binom_neg_derivs_at_one(n: usize) -> Vec<Rational> {
    let mut p = binomial_poly(n - 1).reflect();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(p.eval(&int(1)));
        p = p.derivative();
    }
    out
}

/// Coefficients `c_l` with `F_{n,p}(z) = Σ_{l=1}^p c_l (z+1)^{-l}`.
///
/// `F_{n,p}(z) = D^p { binom(-t,n-1) log((z+t)/(z+1)) }` at `t = 1`, expanded
/// by Leibniz with `D^l log(z+t) = (-1)^{l-1}(l-1)!/(z+t)^l`. Index 0 of the
/// result is always zero.
pub fn fnr_inverse_coeffs(n: usize, p: usize) -> Vec<Rational> {
    let b = binom_neg_derivs_at_one(n);
    let mut c = vec![Rational::zero(); p + 1];
    for (l, cl) in c.iter_mut().enumerate().skip(1) {
        let i = p - l;
        if i >= b.len() {
            continue;
        }
        let sign = if l % 2 == 1 { BigInt::one() } else { -BigInt::one() };
        *cl = Rational::from_integer(binomial(p as u32, l as u32) * factorial(l as u32 - 1) * sign)
            * &b[i];
    }
    c
}

/// Numerator of `F_{n,2r-1}(z)` over `(z+1)^{2r-1}`.
pub fn series_numerator(n: usize, r: usize) -> Poly {
    let p = 2 * r - 1;
    let c = fnr_inverse_coeffs(n, p);
    let zp1 = Poly::linear(int(1));
    c.iter().enumerate().skip(1).fold(Poly::zero(), |acc, (l, cl)| {
        if cl.is_zero() {
            acc
        } else {
            acc + zp1.pow((p - l) as u32).scale(cl)
        }
    })
}

/// Generates the full higher Stirling data for order `n` with series terms
/// `r = 1..=r_max`.
pub fn higher_stirling_coeffs(n: usize, r_max: usize) -> CoeffBundle {
    assert!(n >= 1 && r_max >= 1, "need n >= 1 and r_max >= 1");
    CoeffBundle {
        n,
        log_coeff: log_coefficient(n),
        poly_part: polynomial_part(n),
        const_part: constant_part(n),
        series_terms: (1..=r_max)
            .map(|r| SeriesTerm { r, numerator: series_numerator(n, r) })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn n1_is_classical_stirling() {
        let b = higher_stirling_coeffs(1, 4);
        assert_eq!(b.log_coeff, Poly::new(vec![rat(1, 2), int(1)]));
        // poly_part + ONE weight = -(z+1)
        let rational = &b.poly_part + &b.const_part.weight(ConstTag::One);
        assert_eq!(rational, Poly::from_ints(&[-1, -1]));
        assert_eq!(b.const_part.weight(ConstTag::ZetaD(0)), Poly::constant(int(-1)));
        // B_{2r}/[2r]_2 = B_{2r}/(2r)! * (2r-2)!
        for t in &b.series_terms {
            assert_eq!(
                t.numerator,
                Poly::constant(Rational::from_integer(factorial(2 * t.r as u32 - 2)))
            );
        }
    }

    #[test]
    fn log_coefficients() {
        assert_eq!(log_coefficient(2), Poly::new(vec![rat(-1, 12), int(0), rat(1, 2)]));
        assert_eq!(
            log_coefficient(3),
            Poly::new(vec![rat(1, 24), int(0), rat(-1, 4), rat(1, 6)])
        );
    }

    #[test]
    fn degrees() {
        for n in 1..7 {
            let b = higher_stirling_coeffs(n, 8);
            assert_eq!(b.log_coeff.degree(), Some(n));
            for t in &b.series_terms {
                assert!(t.numerator.degree().map_or(true, |d| d < n), "n={n} r={}", t.r);
            }
        }
    }

    #[test]
    fn f_n0_vanishes() {
        for n in 1..6 {
            assert!(fnr_inverse_coeffs(n, 0).iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn json_roundtrip() {
        let b = higher_stirling_coeffs(3, 3);
        let v = b.to_json();
        assert_eq!(v["log_coeff"][0], "1/24");
        assert_eq!(v["const_part"]["zeta_d"]["2"][0], "-1/2");
        let back: CoeffBundle = serde_json::from_value(v).unwrap();
        assert_eq!(back, b);
    }
}
