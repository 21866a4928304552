use std::sync::{OnceLock, RwLock};

use num_traits::Zero;

use super::poly::Poly;
use super::rational::{binomial, int, to_f64, Rational};

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![int(1)]))
}

fn float_table() -> &'static RwLock<Vec<f64>> {
    static TABLE: OnceLock<RwLock<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(Vec::new()))
}

/// Bernoulli number `B_r` with `B_1 = -1/2`.
///
/// Values are computed by `B_n = -1/(n+1) Σ_{k<n} C(n+1,k) B_k` and cached.
pub fn bernoulli_number(r: usize) -> Rational {
    if let Some(b) = table().read().expect("bernoulli cache").get(r) {
        return b.clone();
    }
    let mut t = table().write().expect("bernoulli cache");
    while t.len() <= r {
        let n = t.len();
        let b = if n > 1 && n % 2 == 1 {
            Rational::zero()
        } else {
            let s = t
                .iter()
                .enumerate()
                .fold(Rational::zero(), |acc, (k, bk)| {
                    acc + Rational::from_integer(binomial(n as u32 + 1, k as u32)) * bk
                });
            -s / int(n as i64 + 1)
        };
        t.push(b);
    }
    t[r].clone()
}

/// `B_r` rounded to binary64.
pub fn bernoulli_f64(r: usize) -> f64 {
    if let Some(&b) = float_table().read().expect("bernoulli cache").get(r) {
        return b;
    }
    let vals: Vec<f64> = (0..=r).map(|i| to_f64(&bernoulli_number(i))).collect();
    let mut t = float_table().write().expect("bernoulli cache");
    if t.len() < vals.len() {
        *t = vals;
    }
    t[r]
}

/// Bernoulli polynomial `B_r(t) = Σ C(r,i) B_i t^{r-i}`.
pub fn bernoulli_poly(r: usize) -> Poly {
    Poly::new(
        (0..=r)
            .map(|d| Rational::from_integer(binomial(r as u32, d as u32)) * bernoulli_number(r - d))
            .collect(),
    )
}

/// Periodic Bernoulli function `B̄_r(t) = B_r(t - ⌊t⌋)`.
pub fn periodic_bernoulli(r: usize, t: f64) -> f64 {
    let frac = t - t.floor();
    let c = bernoulli_poly(r).to_f64_coeffs();
    c.iter().rev().fold(0.0, |acc, &a| acc * frac + a)
}
