use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::Poly;
use super::rational::{factorial, int, Rational};
use crate::error::{Error, Result};

/// Rows kept in the precomputed Stirling triangle.
pub const STIRLING_N_MAX: usize = 32;

fn stirling_row(n: usize) -> Vec<BigInt> {
    // Coefficients of [u]_n, built by multiplying in (u - i).
    let mut row = vec![BigInt::one()];
    for i in 0..n {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigInt::from(i);
        }
        row = next;
    }
    row
}

fn stirling_table() -> &'static Vec<Vec<BigInt>> {
    static TABLE: OnceLock<Vec<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| (0..=STIRLING_N_MAX).map(stirling_row).collect())
}

/// Signed Stirling number of the first kind: the coefficient of `u^j` in
/// `[u]_n = u(u-1)...(u-n+1)`.
pub fn stirling_first(n: usize, j: usize) -> Result<BigInt> {
    if j > n {
        return Err(Error::Domain(format!("stirling_first({n}, {j}): need j <= n")));
    }
    if n <= STIRLING_N_MAX {
        Ok(stirling_table()[n][j].clone())
    } else {
        Ok(stirling_row(n)[j].clone())
    }
}

/// Row `n` of the signed Stirling triangle, `S_{n,0..=n}`.
pub fn stirling_row_vec(n: usize) -> Vec<BigInt> {
    if n <= STIRLING_N_MAX {
        stirling_table()[n].clone()
    } else {
        stirling_row(n)
    }
}

/// `[x]_n` as a polynomial in `x`.
pub fn falling_factorial_poly(n: usize) -> Poly {
    Poly::new(stirling_row_vec(n).into_iter().map(Rational::from_integer).collect())
}

/// `binom(x, n) = [x]_n / n!`.
pub fn binomial_poly(n: usize) -> Poly {
    falling_factorial_poly(n).scale(&Rational::new(BigInt::one(), factorial(n as u32)))
}

/// `G_{n,0..n-1}(z)`, the coefficients of `u^j` in `binom(z-u, n-1)`.
///
/// Uses `G_{n,j} = (-1)^j/j! D^j binom(z, n-1)`.
pub fn g_polynomials(n: usize) -> Vec<Poly> {
    assert!(n >= 1, "g_polynomials needs n >= 1");
    let b = binomial_poly(n - 1);
    let mut d = b;
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let sign = if j % 2 == 0 { int(1) } else { int(-1) };
        out.push(d.scale(&(sign / Rational::from_integer(factorial(j as u32)))));
        d = d.derivative();
    }
    out
}

/// `(-D)^k p`.
pub fn neg_derivative(p: &Poly, k: usize) -> Poly {
    let d = p.nth_derivative(k);
    if k % 2 == 0 {
        d
    } else {
        -d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn stirling_values() {
        assert_eq!(stirling_first(3, 1).unwrap(), BigInt::from(2));
        assert_eq!(stirling_first(3, 2).unwrap(), BigInt::from(-3));
        assert_eq!(stirling_first(3, 3).unwrap(), BigInt::from(1));
        assert_eq!(stirling_first(0, 0).unwrap(), BigInt::from(1));
        assert_eq!(stirling_first(4, 2).unwrap(), BigInt::from(11));
        assert!(matches!(stirling_first(2, 3), Err(Error::Domain(_))));
        assert_eq!(stirling_first(40, 40).unwrap(), BigInt::from(1));
    }

    #[test]
    fn stirling_rows_vanish_at_one() {
        for n in 2..20 {
            let s: BigInt = stirling_row_vec(n).iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial_poly(0), Poly::one());
        assert_eq!(binomial_poly(1), Poly::x());
        assert_eq!(binomial_poly(2), Poly::new(vec![int(0), rat(-1, 2), rat(1, 2)]));
        assert_eq!(binomial_poly(5).eval(&int(7)), int(21));
    }

    #[test]
    fn g_family() {
        assert_eq!(g_polynomials(1), vec![Poly::one()]);
        assert_eq!(g_polynomials(2), vec![Poly::x(), Poly::constant(int(-1))]);
        assert_eq!(g_polynomials(3)[2], Poly::constant(rat(1, 2)));
    }
}
