use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::bernoulli::{bernoulli_number, bernoulli_poly};
use super::combinatorics::{binomial_poly, g_polynomials, stirling_row_vec};
use super::poly::Poly;
use super::rational::{binomial, factorial, falling, int, Rational};
use super::symbolic::{ConstTag, LaurentInK, SymbolicConstantCombo};

/// `φ_{j,r} = D^r { t^{j+1}/(j+1) log t - t^{j+1}/(j+1)^2 } at t = 1`.
///
/// Leibniz on `t^{j+1} log t` with `D^l log t = (-1)^{l-1}(l-1)!/t^l`.
pub fn phi_jr(j: usize, r: usize) -> Rational {
    let a = int(j as i64 + 1);
    let mut s = Rational::zero();
    for l in 1..=r {
        let sign = if l % 2 == 1 { 1 } else { -1 };
        let term = Rational::from_integer(binomial(r as u32, l as u32))
            * falling(&a, (r - l) as u32)
            * Rational::from_integer(factorial(l as u32 - 1) * BigInt::from(sign));
        s += term;
    }
    s / &a - falling(&a, r as u32) / (&a * &a)
}

/// `P_j(x) = Σ_{r=0}^{j+1} B_r/r! φ_{j,r} x^{j-r+1}`.
pub fn p_poly(j: usize) -> Poly {
    let mut c = vec![Rational::zero(); j + 2];
    for r in 0..=j + 1 {
        c[j + 1 - r] = bernoulli_number(r) / Rational::from_integer(factorial(r as u32))
            * phi_jr(j, r);
    }
    Poly::new(c)
}

/// `Q_j(z) = P_j(z+1) - Σ_r C(j,r) z^r P_{j-r}(1)
///   + 1/(j+1) Σ_{r=1}^{j+1} C(j+1,r) B_{j+1-r}(z) Σ_{l=1}^r (-1)^{l-1} z^l/l`.
pub fn q_poly(j: usize) -> Poly {
    let one = int(1);
    let mut q = p_poly(j).shift(&one);
    for r in 0..=j {
        let c = Rational::from_integer(binomial(j as u32, r as u32)) * p_poly(j - r).eval(&one);
        q = q - Poly::monomial(c, r);
    }
    let mut tail = Poly::zero();
    for r in 1..=j + 1 {
        let log_part = Poly::new(
            (0..=r)
                .map(|l| match l {
                    0 => Rational::zero(),
                    _ if l % 2 == 1 => int(1) / int(l as i64),
                    _ => int(-1) / int(l as i64),
                })
                .collect(),
        );
        let b = bernoulli_poly(j + 1 - r)
            .scale(&Rational::from_integer(binomial(j as u32 + 1, r as u32)));
        tail = tail + &b * &log_part;
    }
    q + tail.scale(&(int(1) / int(j as i64 + 1)))
}

/// Exponent `Φ_n(z,k)` of the Weierstrass convergence factor, as a Laurent
/// polynomial in `k` over `μ = -1..n-2`.
pub fn phi_n(n: usize) -> LaurentInK {
    assert!(n >= 1, "phi_n needs n >= 1");
    let s = stirling_row_vec(n - 1);
    let inv_fact = Rational::new(BigInt::one(), factorial(n as u32 - 1));
    let mut out = LaurentInK::new();
    for mu in -1..=(n as i64 - 2) {
        let mut p = Poly::zero();
        for r in (mu + 1)..=(n as i64 - 1) {
            let c = Rational::from_integer(s[r as usize].clone()) / int(r - mu);
            p = p + Poly::monomial(c, (r - mu) as usize);
        }
        let sign = if (mu + 1) % 2 == 0 { int(1) } else { int(-1) };
        out.insert(mu, p.scale(&(sign * &inv_fact)));
    }
    out
}

/// The prefactor exponent `F_n(z)` over the basis `{1, γ, ζ'(-r)}`.
pub fn f_n_symbolic(n: usize) -> SymbolicConstantCombo {
    assert!(n >= 1, "f_n_symbolic needs n >= 1");
    let g = g_polynomials(n);
    let mut out = SymbolicConstantCombo::new();

    let one = g
        .iter()
        .enumerate()
        .fold(Poly::zero(), |acc, (j, gj)| acc + gj * &q_poly(j));
    out.add(ConstTag::One, &one);

    // binom(z-u, n-1) = Σ_j G_{n,j}(z) u^j, so (1/r!) ∂_u^r at u is
    // Σ_{j≥r} C(j,r) G_{n,j}(z) u^{j-r}; at u = z this is a polynomial in z.
    for r in 0..n.saturating_sub(1) {
        let mut at_z = Poly::zero();
        for (j, gj) in g.iter().enumerate().skip(r) {
            let c = Rational::from_integer(binomial(j as u32, r as u32));
            at_z = at_z + (gj * &Poly::monomial(c, j - r));
        }
        out.add(ConstTag::ZetaD(r), &(at_z - &g[r]));
    }

    // ∫_0^z binom(z-u, n-1) du = ∫_0^z binom(v, n-1) dv.
    out.add(ConstTag::Gamma, &-binomial_poly(n - 1).integral());
    out
}

/// Exact Weierstrass-form data for one order `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeierstrassBundle {
    pub n: usize,
    /// `F_n(z)` in the constant basis.
    pub f_n: SymbolicConstantCombo,
    /// `Φ_n(z,k)` as exponent -> polynomial in `z`.
    pub phi_n: LaurentInK,
    /// `-binom(-k, n-1)` as a polynomial in `k`: the power of `(1 + z/k)`.
    pub factor_exponent: Poly,
}

pub fn weierstrass_bundle(n: usize) -> WeierstrassBundle {
    WeierstrassBundle {
        n,
        f_n: f_n_symbolic(n),
        phi_n: phi_n(n),
        factor_exponent: -binomial_poly(n - 1).reflect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn phi_values() {
        assert_eq!(phi_jr(0, 0), int(-1));
        assert_eq!(phi_jr(0, 1), int(0));
        assert_eq!(phi_jr(0, 2), int(1));
    }

    #[test]
    fn p_polys() {
        assert_eq!(p_poly(0), Poly::from_ints(&[0, -1]));
        assert_eq!(p_poly(0).eval(&int(1)), int(-1));
        for j in 0..8 {
            let p = p_poly(j);
            assert_eq!(p.degree(), Some(j + 1));
            assert_eq!(p.coeff(j + 1), -(int(1) / int((j as i64 + 1).pow(2))));
        }
    }

    #[test]
    fn q_polys() {
        assert!(q_poly(0).is_zero());
        assert!(q_poly(1).eval(&int(0)).is_zero());
    }

    /// Q_2(1) by direct evaluation of each piece of its definition.
    #[test]
    fn q2_at_one_brute_force() {
        let z = int(1);
        let mut v = p_poly(2).eval(&int(2));
        for r in 0..=2u32 {
            v -= Rational::from_integer(binomial(2, r)) * p_poly(2 - r as usize).eval(&int(1));
        }
        let mut t = Rational::zero();
        for r in 1..=3usize {
            let mut inner = Rational::zero();
            for l in 1..=r {
                let s = if l % 2 == 1 { int(1) } else { int(-1) };
                inner += s / int(l as i64);
            }
            t += Rational::from_integer(binomial(3, r as u32))
                * bernoulli_poly(3 - r).eval(&z)
                * inner;
        }
        v += t / int(3);
        assert_eq!(q_poly(2).eval(&z), v);
    }

    #[test]
    fn phi_n_small() {
        let p1 = phi_n(1);
        assert_eq!(p1.exponent_range(), Some((-1, -1)));
        assert_eq!(p1.term(-1), Poly::x());
        let p2 = phi_n(2);
        assert_eq!(p2.term(-1), Poly::monomial(rat(1, 2), 2));
        assert_eq!(p2.term(0), Poly::monomial(int(-1), 1));
        assert_eq!(phi_n(3).term(1), Poly::monomial(rat(1, 2), 1));
        for n in 1..8 {
            assert_eq!(phi_n(n).exponent_range(), Some((-1, n as i64 - 2)));
        }
    }

    #[test]
    fn f_n_small() {
        let f1 = f_n_symbolic(1);
        assert_eq!(f1.tags(), vec![ConstTag::Gamma]);
        assert_eq!(f1.weight(ConstTag::Gamma), Poly::from_ints(&[0, -1]));

        let f2 = f_n_symbolic(2);
        assert_eq!(f2.weight(ConstTag::Gamma), Poly::monomial(rat(-1, 2), 2));
        assert_eq!(f2.weight(ConstTag::ZetaD(0)), Poly::from_ints(&[0, -1]));
        assert_eq!(
            f2.weight(ConstTag::One),
            Poly::new(vec![int(0), rat(-1, 2), rat(-1, 2)])
        );

        let f3 = f_n_symbolic(3);
        assert_eq!(
            f3.weight(ConstTag::Gamma),
            Poly::new(vec![int(0), int(0), rat(1, 4), rat(-1, 6)])
        );
    }
}
