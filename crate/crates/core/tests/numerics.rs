use mgk_core::numerics::{
    compensated_sum, periodic_bernoulli_integral, series_sum, FnIntegrand, PanelScheme,
};
use mgk_core::zeta::{
    c_constant, euler_gamma, product_term, hurwitz_zeta, hurwitz_zeta_deriv, polylog, riemann_zeta_deriv,
    zeta_deriv_neg, zeta_deriv_neg_product, LOG_SQRT_2PI,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn exact_sum(v: &[f64]) -> f64 {
    let s = v
        .iter()
        .map(|x| BigRational::from_float(*x).unwrap())
        .fold(BigRational::zero(), |a, b| a + b);
    s.to_f64().unwrap()
}

/// A vector whose exact sum is tiny compared to its terms.
fn cancelling() -> impl Strategy<Value = Vec<f64>> {
    (
        prop::collection::vec((-30i32..30, -1.0f64..1.0), 1..40),
        prop::collection::vec(-1e-10f64..1e-10, 0..5),
        any::<u64>(),
    )
        .prop_map(|(big, small, seed)| {
            let mut v: Vec<f64> = big.iter().map(|(e, m)| m * 2f64.powi(*e)).collect();
            let neg: Vec<f64> = v.iter().map(|x| -x).collect();
            v.extend(neg);
            v.extend(small);
            // deterministic shuffle
            let mut s = seed | 1;
            for i in (1..v.len()).rev() {
                s ^= s << 13;
                s ^= s >> 7;
                s ^= s << 17;
                v.swap(i, (s % (i as u64 + 1)) as usize);
            }
            v
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rounding_estimate_covers_naive_error(v in cancelling()) {
        let r = compensated_sum(v.iter().copied());
        let naive: f64 = v.iter().sum();
        let exact = exact_sum(&v);
        prop_assert!(r.rounding_est >= (naive - r.sum).abs());
        prop_assert!((r.sum - exact).abs() <= r.rounding_est);
    }

    /// Cascaded compensation is as accurate as summing in doubled precision
    /// and rounding once: `|res - s| <= eps |s| + γ_{n-1}^2 Σ|x|`.
    #[test]
    fn compensated_meets_doubled_precision_bound(v in cancelling()) {
        let r = compensated_sum(v.iter().copied());
        let naive: f64 = v.iter().sum();
        let exact = exact_sum(&v);
        let u = f64::EPSILON / 2.0;
        let k = (v.len() - 1) as f64;
        let gamma = k * u / (1.0 - k * u);
        let second_order = gamma * gamma * v.iter().map(|x| x.abs()).sum::<f64>();
        prop_assert!((r.sum - exact).abs() <= u * exact.abs() + second_order);
        prop_assert!((r.sum - exact).abs() <= (naive - exact).abs() + second_order);
    }

    #[test]
    fn series_sum_permutation_stable(seed in any::<u64>()) {
        const N: usize = 1000;
        let mut perm: Vec<usize> = (1..=N).collect();
        let mut s = seed | 1;
        for i in (1..N).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let inv = |k: usize| 1.0 / (k as f64 * k as f64);
        let plain = series_sum(|k| inv(k as usize), 1e-10, 10_000_000);
        let shuffled = series_sum(
            |k| {
                let k = k as usize;
                if k <= N { inv(perm[k - 1]) } else { inv(k) }
            },
            1e-10,
            10_000_000,
        );
        prop_assert!(plain.converged && shuffled.converged);
        prop_assert!(
            (plain.value - shuffled.value).abs() <= plain.error_bound + shuffled.error_bound
        );
    }
}

#[test]
fn compensated_examples() {
    assert_eq!(compensated_sum([1.0, 1e-16, -1.0]).sum, 1e-16);
    assert_eq!(compensated_sum([]).sum, 0.0);
    let r = compensated_sum(std::iter::repeat(0.1).take(1_000_000));
    let exact = BigRational::from_float(0.1).unwrap() * BigRational::from_integer(BigInt::from(1_000_000));
    assert!((r.sum - exact.to_f64().unwrap()).abs() < 1e-9);
    assert!((r.sum - 1e5).abs() < 1e-9);
}

#[test]
fn series_examples() {
    let g = series_sum(|k| 0.5f64.powi(k as i32), 1e-15, 1000);
    assert!(g.converged && (g.value - 1.0).abs() <= g.error_bound.max(1e-15));
    // direct large-N oracle with an integral tail
    let n = 2_000_000u64;
    let direct: f64 = (1..=n).rev().map(|k| 1.0 / (k as f64 * k as f64)).sum::<f64>() + 1.0 / n as f64;
    let s = series_sum(|k| 1.0 / (k as f64 * k as f64), 1e-9, 10_000_000);
    assert!((s.value - direct).abs() <= s.error_bound);
    let h = series_sum(|k| 1.0 / k as f64, 1e-12, 10_000);
    assert!(!h.converged);
}

/// `∫_1^∞ B̄_2(t) t^{-3} dt` against a brute-force panel sum with Simpson's
/// rule on a fine mesh.
#[test]
fn bernoulli_integral_refinement() {
    let r = periodic_bernoulli_integral(
        2,
        &FnIntegrand(|t: f64| t.powi(-3)),
        &PanelScheme::default().with_k_max(1000).with_tail_exponent(3.0),
    )
    .unwrap();
    let b2 = |x: f64| x * x - x + 1.0 / 6.0;
    let mut acc = 0.0;
    for k in (1..20_000).rev() {
        let kf = k as f64;
        let steps = if k < 20 { 4000 } else { 200 };
        let h = 1.0 / steps as f64;
        let f = |i: usize| {
            let x = i as f64 * h;
            b2(x) * (kf + x).powi(-3)
        };
        let mut s = f(0) + f(steps);
        for i in 1..steps {
            s += f(i) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        acc += s * h / 3.0;
    }
    // the remaining tail is below 1e-13 in magnitude
    assert!((r.value - acc).abs() < 1e-10, "{} vs {acc}", r.value);
}

#[test]
fn bernoulli_integral_halving() {
    let f = FnIntegrand(|t: f64| t.powi(-4) * (1.0 + t).ln());
    let base = PanelScheme::default().with_tail_exponent(3.5);
    let a = periodic_bernoulli_integral(3, &f, &base).unwrap();
    let b = periodic_bernoulli_integral(3, &f, &base.with_k_max(2 * base.k_max)).unwrap();
    assert!((a.value - b.value).abs() <= a.error_bound);
}

#[test]
fn zeta_prime_zero() {
    assert!((zeta_deriv_neg(0) + LOG_SQRT_2PI).abs() < 1e-12);
    let r = riemann_zeta_deriv(0.0, 6).unwrap();
    assert!((r.value + LOG_SQRT_2PI).abs() < 1e-12);
}

#[test]
fn zeta_prime_two_matches_direct_sum() {
    // ζ'(2) = -Σ log k / k^2, summed with an integral tail correction
    let n = 1_000_000usize;
    let mut s = 0.0;
    for k in (2..=n).rev() {
        let kf = k as f64;
        s -= kf.ln() / (kf * kf);
    }
    let nf = n as f64;
    // -∫_N^∞ log t/t^2 dt + half the last term
    s -= (nf.ln() + 1.0) / nf;
    s += 0.5 * nf.ln() / (nf * nf);
    let r = riemann_zeta_deriv(2.0, 8).unwrap();
    assert!((r.value - s).abs() < 1e-9, "{} vs {s}", r.value);
}

#[test]
fn c_constant_two_paths() {
    for j in 0..=6 {
        let c = c_constant(j, j + 4).unwrap();
        let other = -zeta_deriv_neg(j) - 1.0 / ((j + 1) * (j + 1)) as f64;
        assert!((c.value - other).abs() < 1e-9, "j={j}");
    }
}

/// Factors for `ζ'(0)` decay like `k^{-2}`, so the tail after `K` factors
/// is `O(1/K)`. For `ζ'(-1)` the `k^{-2}` coefficient is a multiple of
/// `B_3 = 0`, leaving `k^{-3}` factors and an `O(K^{-2})` tail.
#[test]
fn product_tail_scaling() {
    let ratio = |j: usize| {
        let exact = zeta_deriv_neg(j);
        let e1 = zeta_deriv_neg_product(j, 1000).unwrap().value - exact;
        let e2 = zeta_deriv_neg_product(j, 2000).unwrap().value - exact;
        e1 / e2
    };
    assert!((1.9..2.1).contains(&ratio(0)), "{}", ratio(0));
    assert!((3.8..4.2).contains(&ratio(1)), "{}", ratio(1));
    let t = |j: usize| product_term(j, 1000.0) / product_term(j, 2000.0);
    assert!((3.9..4.1).contains(&t(0)));
    assert!((7.8..8.2).contains(&t(1)));
}

#[test]
fn hurwitz_reductions() {
    let z2 = hurwitz_zeta(2.0, 1.0, 0).unwrap().value;
    assert!((z2 - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
    // ζ(s, z) - ζ(s, z+1) = z^{-s}
    for (s, z) in [(2.5, 0.7), (-1.5, 2.0), (0.5, 3.3)] {
        let a = hurwitz_zeta(s, z, 0).unwrap().value;
        let b = hurwitz_zeta(s, z + 1.0, 0).unwrap().value;
        assert!((a - b - z.powf(-s)).abs() < 1e-11, "s={s} z={z}");
        let da = hurwitz_zeta_deriv(s, z, 0).unwrap().value;
        let db = hurwitz_zeta_deriv(s, z + 1.0, 0).unwrap().value;
        assert!((da - db + z.ln() * z.powf(-s)).abs() < 1e-11, "s={s} z={z}");
    }
}

#[test]
fn euler_constant() {
    // H_N - log N - 1/(2N) + 1/(12 N^2) at N = 10^4
    let n = 10_000usize;
    let h: f64 = (1..=n).rev().map(|k| 1.0 / k as f64).sum();
    let nf = n as f64;
    let approx = h - nf.ln() - 0.5 / nf + 1.0 / (12.0 * nf * nf);
    assert!((euler_gamma() - approx).abs() < 1e-14);
}

#[test]
fn polylog_values() {
    assert!((polylog(1, 0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
    let li2_half = std::f64::consts::PI.powi(2) / 12.0 - 2f64.ln().powi(2) / 2.0;
    assert!((polylog(2, 0.5).unwrap() - li2_half).abs() < 1e-14);
}
