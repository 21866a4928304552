use std::sync::OnceLock;

use super::QContext;
use crate::exact::{Poly, Rational};
use crate::numerics::{RealPoly, Scalar};

const TABLE_MAX: usize = 64;

/// `M_r` and `M̃_r` for `r = 1..=r_max`, index 0 unused.
///
/// `M_1 = 1`, `M_{r+1}(x) = ((r-1)x + 1) M_r(x) - (x² - x) M_r'(x)`, so that
/// `D_t^r log(1 - q^t) = -(log q/(1 - q^t))^r q^t M_r(q^t)`.
///
/// `M̃_1 = 1`, `M̃_{r+1}(x) = r x M̃_r(x) - (x² - x) M̃_r'(x)`, so that
/// `h_r(x) = (log q/(q^x - 1))^r M̃_r(q^x)` satisfies `h_r' = -h_{r+1}`.
#[derive(Clone, Debug)]
pub struct MPolyTable {
    /// `m_polys[r] = M_r`; index 0 holds the zero polynomial.
    pub m_polys: Vec<Poly>,
    /// `m_tilde_polys[r] = M̃_r`; index 0 holds the zero polynomial.
    pub m_tilde_polys: Vec<Poly>,
}

impl MPolyTable {
    pub fn build(r_max: usize) -> Self {
        let x2x = Poly::from_ints(&[0, -1, 1]);
        let mut m = vec![Poly::zero(), Poly::one()];
        let mut mt = vec![Poly::zero(), Poly::one()];
        for r in 1..r_max {
            let rr = Rational::from_integer((r as i64).into());
            let lin = Poly::new(vec![Rational::from_integer(1.into()), Rational::from_integer((r as i64 - 1).into())]);
            let next = &lin * &m[r] - &x2x * &m[r].derivative();
            m.push(next);
            let rx = Poly::monomial(rr, 1);
            let next = &rx * &mt[r] - &x2x * &mt[r].derivative();
            mt.push(next);
        }
        m.truncate(r_max + 1);
        mt.truncate(r_max + 1);
        MPolyTable { m_polys: m, m_tilde_polys: mt }
    }

    pub fn r_max(&self) -> usize {
        self.m_polys.len() - 1
    }
}

struct NumericTable {
    exact: MPolyTable,
    m: Vec<RealPoly>,
    mt: Vec<RealPoly>,
}

fn table() -> &'static NumericTable {
    static T: OnceLock<NumericTable> = OnceLock::new();
    T.get_or_init(|| {
        let exact = MPolyTable::build(TABLE_MAX);
        let m = exact.m_polys.iter().map(RealPoly::from).collect();
        let mt = exact.m_tilde_polys.iter().map(RealPoly::from).collect();
        NumericTable { exact, m, mt }
    })
}

/// `M_r`, exact.
pub fn m_poly(r: usize) -> Poly {
    assert!(r >= 1, "m_poly needs r >= 1");
    if r <= TABLE_MAX {
        return table().exact.m_polys[r].clone();
    }
    MPolyTable::build(r).m_polys[r].clone()
}

/// `M̃_r`, exact.
pub fn m_tilde_poly(r: usize) -> Poly {
    assert!(r >= 1, "m_tilde_poly needs r >= 1");
    if r <= TABLE_MAX {
        return table().exact.m_tilde_polys[r].clone();
    }
    MPolyTable::build(r).m_tilde_polys[r].clone()
}

fn m_real(r: usize) -> std::borrow::Cow<'static, RealPoly> {
    match table().m.get(r) {
        Some(p) => std::borrow::Cow::Borrowed(p),
        None => std::borrow::Cow::Owned(RealPoly::from(&m_poly(r))),
    }
}

fn mt_real(r: usize) -> std::borrow::Cow<'static, RealPoly> {
    match table().mt.get(r) {
        Some(p) => std::borrow::Cow::Borrowed(p),
        None => std::borrow::Cow::Owned(RealPoly::from(&m_tilde_poly(r))),
    }
}

/// `D_x^l log(1 - q^x)`, `l = 0` giving the logarithm itself.
pub(crate) fn log1mq_deriv<T: Scalar>(l: usize, x: T, ctx: &QContext) -> T {
    if l == 0 {
        return ctx.log1mq(x);
    }
    let u = ctx.pow(x);
    let a = ctx.one_minus_pow(x).recip() * ctx.log_q;
    -(a.powi(l as i32) * u * m_real(l).eval(u))
}

/// `D_t^r log(1 - q^t)` at real `t > 0`.
pub fn log1mq_derivative(r: usize, t: f64, ctx: &QContext) -> f64 {
    log1mq_deriv(r, t, ctx)
}

/// `h_l(x) = (log q/(q^x - 1))^l M̃_l(q^x)`.
pub(crate) fn moak_h<T: Scalar>(l: usize, x: T, ctx: &QContext) -> T {
    let u = ctx.pow(x);
    let a = (x * ctx.log_q).exp_m1().recip() * ctx.log_q;
    a.powi(l as i32) * mt_real(l).eval(u)
}
