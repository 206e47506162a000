use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::cf::{convergents, ContinuedFraction};
use crate::error::{Error, Result};
use crate::precision::{RealSpec, DEFAULT_PRECISION_BITS};
use crate::sudler::{ProductPoint, SudlerSeries};

/// Largest `n` a subsequence scan will stream to unless told otherwise.
pub const DEFAULT_N_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubseqOptions {
    pub m_max: usize,
    /// Checkpoints with `q_n` beyond this are skipped and the report is
    /// flagged truncated.
    pub n_budget: u64,
    pub precision_bits: u32,
}

impl SubseqOptions {
    pub fn new(m_max: usize) -> Self {
        SubseqOptions {
            m_max,
            n_budget: DEFAULT_N_BUDGET,
            precision_bits: DEFAULT_PRECISION_BITS,
        }
    }
}

/// `P_{q_n}` at the checkpoint `n = l m + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubseqSample {
    pub m: usize,
    /// Index `n` of the denominator.
    pub index: usize,
    pub q: u64,
    pub point: ProductPoint,
}

/// Samples of one residue class `k` modulo the period length `l`.
#[derive(Clone, Debug, PartialEq)]
pub struct SubseqLimitReport {
    pub residue: usize,
    pub period: usize,
    pub samples: Vec<SubseqSample>,
    /// Last sample, `NaN` if there is none.
    pub limit_estimate: f64,
    /// `|last - previous|`, infinite with fewer than two samples.
    pub cauchy_tail: f64,
    pub truncated: bool,
}

/// Streams `P_n(alpha)` once and samples it at `q_{l m + k}` for
/// `m = 1..=m_max` and every residue `k < l`.
pub fn subsequence_limits(
    cf: &ContinuedFraction,
    options: SubseqOptions,
) -> Result<Vec<SubseqLimitReport>> {
    if !cf.is_periodic() {
        return Err(Error::InvalidArgument(format!("{cf} is not periodic")));
    }
    if options.m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    let period = cf.period().len();
    let last_index = period * options.m_max + period - 1;
    let table = convergents(cf, last_index + 1)?;
    let alpha = RealSpec::Cf(cf.clone()).to_irrational(options.precision_bits)?;

    let mut reports: Vec<SubseqLimitReport> = (0..period)
        .map(|residue| SubseqLimitReport {
            residue,
            period,
            samples: Vec::new(),
            limit_estimate: f64::NAN,
            cauchy_tail: f64::INFINITY,
            truncated: false,
        })
        .collect();

    let budget = BigUint::from(options.n_budget);
    let mut series = SudlerSeries::new(&alpha, options.n_budget);
    let mut last: Option<ProductPoint> = None;
    // q_n is nondecreasing in n, so index order is stream order
    for index in period..=last_index {
        let (m, residue) = (index / period, index % period);
        let q = table.q(index);
        if q > &budget {
            reports[residue].truncated = true;
            continue;
        }
        let q = q.to_u64().expect("within budget");
        let point = match last {
            Some(p) if p.n == q => p,
            _ => series.advance_to(q)?,
        };
        last = Some(point);
        reports[residue].samples.push(SubseqSample { m, index, q, point });
    }

    for report in &mut reports {
        let values: Vec<f64> = report.samples.iter().map(|s| s.point.p).collect();
        if let Some(&v) = values.last() {
            report.limit_estimate = v;
        }
        if let [.., a, b] = values[..] {
            report.cauchy_tail = (b - a).abs();
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_checkpoints_are_fibonacci() {
        let reports = subsequence_limits(&ContinuedFraction::periodic(vec![1]), SubseqOptions::new(12)).unwrap();
        assert_eq!(reports.len(), 1);
        let qs: Vec<u64> = reports[0].samples.iter().map(|s| s.q).collect();
        assert_eq!(qs, vec![1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144]);
        assert!(!reports[0].truncated);
        assert!((reports[0].limit_estimate - 2.4).abs() < 0.1);
    }

    #[test]
    fn period_two_splits_residues() {
        let cf = ContinuedFraction::periodic(vec![1, 2]);
        let reports = subsequence_limits(&cf, SubseqOptions::new(3)).unwrap();
        let idx: Vec<Vec<usize>> = reports
            .iter()
            .map(|r| r.samples.iter().map(|s| s.index).collect())
            .collect();
        assert_eq!(idx, vec![vec![2, 4, 6], vec![3, 5, 7]]);
    }

    #[test]
    fn budget_truncates() {
        let cf = ContinuedFraction::periodic(vec![2]);
        let options = SubseqOptions {
            n_budget: 1000,
            ..SubseqOptions::new(20)
        };
        let reports = subsequence_limits(&cf, options).unwrap();
        assert!(reports[0].truncated);
        assert!(reports[0].samples.iter().all(|s| s.q <= 1000));
        assert!(!reports[0].samples.is_empty());
    }

    #[test]
    fn non_periodic_rejected() {
        let cf = ContinuedFraction::finite(vec![1, 2, 3]);
        assert!(subsequence_limits(&cf, SubseqOptions::new(3)).is_err());
        let cf = ContinuedFraction::periodic(vec![1]);
        assert!(subsequence_limits(&cf, SubseqOptions::new(0)).is_err());
    }
}
