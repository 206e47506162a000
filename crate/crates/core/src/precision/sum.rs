use std::ops::AddAssign;

/// Compensated summation (Kahan's algorithm with Neumaier's improvement).
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    compensation: f64,
    abs_total: f64,
    terms: u64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs_total += x.abs();
        self.terms += 1;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Bound on the rounding error of [`value`](Self::value):
    /// `2u|S| + 2n u^2 sum|x_i|` with `u` the unit roundoff.
    pub fn error_bound(&self) -> f64 {
        let u = super::EPS;
        2.0 * u * self.value().abs() + 2.0 * self.terms as f64 * u * u * self.abs_total
    }
}

impl AddAssign<f64> for NeumaierSum {
    fn add_assign(&mut self, rhs: f64) {
        self.add(rhs);
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
        let naive: f64 = [1.0, 1e100, 1.0, -1e100].iter().sum();
        assert_eq!(naive, 0.0);
    }

    #[test]
    fn many_small_terms() {
        let mut s = NeumaierSum::new();
        for _ in 0..1_000_000 {
            s += 0.1;
        }
        assert!((s.value() - 100_000.0).abs() < 1e-9);
        assert!(s.error_bound() > 0.0);
    }
}
