use super::scalar::Scalar;

/// Running Kahan-Neumaier sum.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<T: Scalar> {
    sum: T,
    comp: T,
    abs_total: f64,
    count: usize,
    nan: bool,
}

impl<T: Scalar> Default for CompensatedSum<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> CompensatedSum<T> {
    pub fn new() -> Self {
        CompensatedSum { sum: T::zero(), comp: T::zero(), abs_total: 0.0, count: 0, nan: false }
    }

    pub fn add(&mut self, x: T) {
        if !(x.re().is_finite() && x.im().is_finite()) {
            self.nan |= x.re().is_nan() || x.im().is_nan();
        }
        let (s, e) = self.sum.two_sum(x);
        self.sum = s;
        self.comp += e;
        self.abs_total += x.abs();
        self.count += 1;
    }

    pub fn total(&self) -> T {
        self.sum + self.comp
    }

    /// Discrepancy between naive and compensated totals plus one rounding
    /// unit per term on the magnitude sum.
    pub fn rounding_est(&self) -> f64 {
        self.comp.abs() + f64::EPSILON * self.abs_total
    }

    /// Sum of absolute values of the terms seen.
    pub fn abs_total(&self) -> f64 {
        self.abs_total
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn has_nan(&self) -> bool {
        self.nan
    }
}

impl<T: Scalar> Extend<T> for CompensatedSum<T> {
    fn extend<I: IntoIterator<Item = T>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

/// Outcome of [`compensated_sum`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SumResult {
    pub sum: f64,
    pub rounding_est: f64,
    pub has_nan: bool,
}

pub fn compensated_sum<I: IntoIterator<Item = f64>>(terms: I) -> SumResult {
    let mut acc = CompensatedSum::new();
    acc.extend(terms);
    SumResult { sum: acc.total(), rounding_est: acc.rounding_est(), has_nan: acc.has_nan() }
}
