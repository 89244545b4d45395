//! Small numeric helpers shared by the expectation and bounds formulas.

use alloc::vec::Vec;

/// Neumaier-compensated accumulator. The normalizer sweeps demand agreement
/// between independent summation routes at 1e-12 on sums of ~1e3 terms,
/// which plain left-to-right f64 addition does not reliably deliver.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Table of `t^-r` for `t in 1..=max_t` (index 0 is unused and holds 0).
pub(crate) fn inv_pow_table(max_t: usize, r: f64) -> Vec<f64> {
    let mut table = Vec::with_capacity(max_t + 1);
    table.push(0.0);
    for t in 1..=max_t {
        table.push(libm::pow(t as f64, -r));
    }
    table
}

/// `x^e` for small non-negative integer exponents.
#[inline]
pub(crate) fn powi(x: f64, e: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..e {
        acc *= x;
    }
    acc
}
