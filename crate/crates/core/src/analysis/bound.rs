use std::f64::consts::{E, PI};

use num_bigint::BigUint;

use crate::cf::{convergents, ContinuedFraction};
use crate::error::{Error, Result};
use crate::ostrowski::{OstrowskiBase, OstrowskiDigits};
use crate::precision::{bigint_scaled_abs, ln_biguint, RealSpec};
use crate::sudler::sudler_point;

/// The four terms of the digit-wise upper bound on `log P_n(alpha)`, with the
/// left-hand side evaluated directly.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundBreakdown {
    pub n: u64,
    pub digits: OstrowskiDigits,
    /// `800 z#`
    pub term1: f64,
    /// `151 sum (b_j / a_j) max_{k<j} log a_k`
    pub term2: f64,
    /// `(3/2) sum log+ b_j`
    pub term3: f64,
    /// `sum b_j log(2 pi b_j q_j |q_j alpha - p_j| / e)`
    pub term4: f64,
    pub total: f64,
    /// `log P_n(alpha)`, `-inf` when the product vanishes.
    pub lhs: f64,
    pub lhs_err: f64,
}

impl BoundBreakdown {
    pub fn holds(&self) -> bool {
        self.lhs <= self.total
    }
}

/// Evaluates every term from the Ostrowski digits of `n` to base `cf`.
pub fn log_product_bound(cf: &ContinuedFraction, n: u64, precision_bits: u32) -> Result<BoundBreakdown> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let base = OstrowskiBase::new(cf.clone(), &BigUint::from(n))?;
    let digits = base.encode_u64(n)?;
    let z = digits.z();
    let coefficients = cf.unrolled(z)?;
    let table = convergents(cf, z + 2)?;

    // |q_j alpha - p_j| ~ 1/q_{j+1} needs about twice the bits of q
    let bits = precision_bits.max(2 * table.q(z + 1).bits() as u32 + 64);
    let alpha = RealSpec::Cf(cf.clone()).to_bigreal(bits)?;

    let mut term2 = 0.0;
    let mut term3 = 0.0;
    let mut term4 = 0.0;
    for &(j, b) in digits.nonzero() {
        let a_j = coefficients[j - 1] as f64;
        let max_log = coefficients[..j - 1]
            .iter()
            .map(|&a| (a as f64).ln())
            .fold(0.0, f64::max);
        let b = b as f64;
        term2 += b / a_j * max_log;
        term3 += b.ln().max(0.0);
        let offset = alpha.scaled_offset(table.q(j), table.p(j));
        let log_delta = bigint_scaled_abs(&offset, bits).ln();
        term4 += b * ((2.0 * PI * b).ln() + ln_biguint(table.q(j)) + log_delta - E.ln());
    }
    let term1 = 800.0 * digits.z_sharp() as f64;
    let term2 = 151.0 * term2;
    let term3 = 1.5 * term3;

    let (lhs, lhs_err) = match sudler_point(&alpha, n) {
        Ok(p) => (p.log_p, p.err),
        Err(Error::RationalPoint { .. }) => (f64::NEG_INFINITY, 0.0),
        Err(e) => return Err(e),
    };
    Ok(BoundBreakdown {
        n,
        digits,
        term1,
        term2,
        term3,
        term4,
        total: term1 + term2 + term3 + term4,
        lhs,
        lhs_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 192;

    #[test]
    fn single_denominator() {
        // [0; (3)]: q = 0, 1, 3, 10, 33, 109
        let cf = ContinuedFraction::periodic(vec![3]);
        let b = log_product_bound(&cf, 33, P).unwrap();
        assert_eq!(b.digits.nonzero(), &[(4, 1)]);
        assert_eq!(b.term1, 800.0);
        assert!((b.term2 - 151.0 * 3f64.ln() / 3.0).abs() < 1e-12);
        assert_eq!(b.term3, 0.0);
        // |33 alpha - 10| from alpha = (sqrt 13 - 3)/2
        let alpha = (13f64.sqrt() - 3.0) / 2.0;
        let expected = (2.0 * PI * 33.0 * (33.0 * alpha - 10.0).abs() / E).ln();
        assert!((b.term4 - expected).abs() < 1e-9);
        assert!(b.term4 <= PI.ln() - 3f64.ln());
        assert!(b.holds());
    }

    #[test]
    fn binary_digits_have_no_third_term() {
        let cf = ContinuedFraction::periodic(vec![4]);
        // q = 1, 4, 17, 72: 72 + 4 + 1 has digits all 1
        let b = log_product_bound(&cf, 77, P).unwrap();
        assert!(b.digits.nonzero().iter().all(|&(_, d)| d == 1));
        assert_eq!(b.term3, 0.0);
        let c = log_product_bound(&cf, 3 * 17, P).unwrap();
        assert!((c.term3 - 1.5 * 3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn total_is_sum_of_terms() {
        let cf = ContinuedFraction::periodic(vec![1]);
        let b = log_product_bound(&cf, 10_000, P).unwrap();
        assert_eq!(b.total, b.term1 + b.term2 + b.term3 + b.term4);
        assert!(b.holds());
    }

    #[test]
    fn finite_base_runs_out() {
        let cf = ContinuedFraction::finite(vec![2, 3]);
        assert!(matches!(
            log_product_bound(&cf, 100, P),
            Err(Error::InsufficientCoefficients { .. })
        ));
    }
}
