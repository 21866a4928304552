use std::sync::OnceLock;

use num_complex::Complex64;

use super::scalar::{RealPoly, Scalar};
use super::summation::CompensatedSum;
use crate::error::{Error, Result};
use crate::exact::{bernoulli_f64, bernoulli_poly};
use crate::result::{EvalResult, Method};

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let n = order;
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs[i] = x;
        ws[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (xs, ws)
}

fn gl16() -> &'static (Vec<f64>, Vec<f64>) {
    static R: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    R.get_or_init(|| gauss_legendre(16))
}

/// Panel layout for `∫_start^∞ B̄_m(t) f(t) dt`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PanelScheme {
    /// Gauss-Legendre nodes per unit panel.
    pub order: usize,
    /// Number of unit panels `[k, k+1]`.
    pub k_max: usize,
    /// Expected decay power `p` of `f`, used when no derivatives are known.
    pub tail_exponent: f64,
    /// Integer lower limit of integration.
    pub start: usize,
    /// Terms of the endpoint expansion used for `∫_K^∞`.
    pub tail_terms: usize,
}

impl Default for PanelScheme {
    fn default() -> Self {
        PanelScheme { order: 16, k_max: 200, tail_exponent: 2.0, start: 1, tail_terms: 8 }
    }
}

impl PanelScheme {
    pub fn with_k_max(mut self, k_max: usize) -> Self {
        self.k_max = k_max;
        self
    }

    pub fn with_start(mut self, start: usize) -> Self {
        self.start = start;
        self
    }

    pub fn with_tail_exponent(mut self, p: f64) -> Self {
        self.tail_exponent = p;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.order < 2 || self.k_max < 1 || self.tail_exponent.is_nan() || self.tail_exponent <= 1.0
        {
            return Err(Error::Parameter(format!("invalid panel scheme {self:?}")));
        }
        Ok(())
    }
}

/// Integrand of a periodic-Bernoulli integral.
pub trait BernoulliIntegrand: Sync {
    type Value: Scalar;

    fn value(&self, t: f64) -> Self::Value;

    /// `i`-th derivative at `t`, if available in closed form. Enables the
    /// endpoint expansion of the tail beyond the last panel.
    fn derivative(&self, _i: usize, _t: f64) -> Option<Self::Value> {
        None
    }

    /// Nearest complex singularity, used to grade panels next to it.
    fn singularity(&self) -> Option<Complex64> {
        None
    }
}

/// Wraps a closure as an integrand without derivatives.
pub struct FnIntegrand<F>(pub F);

impl<T: Scalar, F: Fn(f64) -> T + Sync> BernoulliIntegrand for FnIntegrand<F> {
    type Value = T;
    fn value(&self, t: f64) -> T {
        (self.0)(t)
    }
}

/// Breakpoints of `[a, b]`, geometrically graded toward a nearby singularity.
fn breakpoints(a: f64, b: f64, sing: Option<Complex64>) -> Vec<f64> {
    let Some(s) = sing else { return vec![a, b] };
    let p = s.re.clamp(a, b);
    let d = Complex64::new(s.re - p, s.im).norm().max(1e-14);
    if d >= b - a {
        return vec![a, b];
    }
    let mut pts = vec![p];
    let mut h = d;
    let mut x = p;
    while x > a {
        x = (x - h).max(a);
        pts.push(x);
        h *= 2.0;
    }
    let (mut h, mut x) = (d, p);
    while x < b {
        x = (x + h).min(b);
        pts.push(x);
        h *= 2.0;
    }
    pts.sort_by(|u, v| u.total_cmp(v));
    pts.dedup();
    pts
}

fn gl_piece<F: BernoulliIntegrand>(
    f: &F,
    bm: &RealPoly,
    k: f64,
    a: f64,
    b: f64,
    nodes: &(Vec<f64>, Vec<f64>),
) -> F::Value {
    let (xs, ws) = nodes;
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = F::Value::zero();
    for (x, w) in xs.iter().zip(ws) {
        let t = mid + half * x;
        acc += f.value(t) * (bm.eval(t - k) * w * half);
    }
    acc
}

/// `∫_start^∞ B̄_m(t) f(t) dt` by Gauss-Legendre on unit panels.
///
/// On `[k, k+1)` the kernel is the polynomial `B_m(t - k)`. Each panel is
/// compared against its two-halves refinement for the quadrature estimate.
/// Beyond the last panel `K`, when derivatives are available the tail is
/// `Σ_i (-1)^{i+1} m!/(m+i+1)! B_{m+i+1} f^{(i)}(K)` and the first omitted
/// term enters the error bound. Otherwise the bound is `C/K^{p-1}` with `C`
/// taken from `|f(K)| K^p`.
pub fn periodic_bernoulli_integral<F: BernoulliIntegrand>(
    m: usize,
    f: &F,
    scheme: &PanelScheme,
) -> Result<EvalResult<F::Value>> {
    scheme.validate()?;
    let owned;
    let nodes = if scheme.order == 16 {
        gl16()
    } else {
        owned = gauss_legendre(scheme.order);
        &owned
    };
    let bm = RealPoly(bernoulli_poly(m).to_f64_coeffs());
    let sing = f.singularity();

    let mut sum = CompensatedSum::new();
    let mut quad_est = 0.0;
    let k0 = scheme.start;
    let k_end = k0 + scheme.k_max;
    for k in k0..k_end {
        let kf = k as f64;
        let pts = breakpoints(kf, kf + 1.0, sing);
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let whole = gl_piece(f, &bm, kf, a, b, nodes);
            let c = 0.5 * (a + b);
            let split = gl_piece(f, &bm, kf, a, c, nodes) + gl_piece(f, &bm, kf, c, b, nodes);
            quad_est += (whole - split).abs();
            sum.add(whole);
        }
    }

    let kf = k_end as f64;
    let f_end = f.value(kf);
    let mid = ((k0 + k_end) / 2).max(k0) as f64;
    let f_mid = f.value(mid);
    if !f_end.is_finite() || (f_end.abs() > f_mid.abs() && f_end.abs() > 1e-300 && mid < kf) {
        return Err(Error::Divergent(format!(
            "integrand does not decay: |f({mid})| = {:e}, |f({kf})| = {:e}",
            f_mid.abs(),
            f_end.abs()
        )));
    }

    let (tail, tail_err) = endpoint_tail(m, f, kf, scheme);
    sum.add(tail);
    let value = sum.total();
    let error_bound = quad_est + tail_err + sum.rounding_est();
    Ok(EvalResult::new(value, error_bound, scheme.k_max, Method::Quadrature))
}

fn endpoint_tail<F: BernoulliIntegrand>(
    m: usize,
    f: &F,
    k: f64,
    scheme: &PanelScheme,
) -> (F::Value, f64) {
    let mut tail = F::Value::zero();
    let mut used = 0;
    let mut coef = 1.0; // m!/(m+i+1)!
    let mut prev = f64::INFINITY;
    for i in 0.. {
        coef /= (m + i + 1) as f64;
        let b = bernoulli_f64(m + i + 1);
        if b == 0.0 {
            continue;
        }
        let Some(d) = f.derivative(i, k) else { break };
        let sign = if i % 2 == 0 { -1.0 } else { 1.0 };
        let term = d * (sign * coef * b);
        let mag = term.abs();
        if used >= scheme.tail_terms || mag > prev {
            return (tail, mag.min(prev));
        }
        tail += term;
        prev = mag;
        used += 1;
    }
    if used == 0 {
        let p = scheme.tail_exponent;
        let c = f.value(k).abs() * k.powf(p);
        let sup_b = if m == 0 { 1.0 } else { bernoulli_f64(m).abs().max(0.5) };
        return (F::Value::zero(), sup_b * c * k.powf(1.0 - p) / (p - 1.0));
    }
    (tail, prev)
}
