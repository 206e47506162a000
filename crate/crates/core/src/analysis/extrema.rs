use std::fmt;
use std::str::FromStr;

use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};
use crate::precision::{BigReal, RealSpec};
use crate::sudler::{fibonacci, golden_mean, SudlerSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtremumKind {
    Min,
    Max,
}

impl ExtremumKind {
    fn beats(self, candidate: f64, current: f64) -> bool {
        match self {
            ExtremumKind::Min => candidate < current,
            ExtremumKind::Max => candidate > current,
        }
    }
}

impl fmt::Display for ExtremumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExtremumKind::Min => "min",
            ExtremumKind::Max => "max",
        })
    }
}

impl FromStr for ExtremumKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(ExtremumKind::Min),
            "max" => Ok(ExtremumKind::Max),
            other => Err(Error::InvalidArgument(format!("unknown extremum kind {other:?}"))),
        }
    }
}

/// A new running extremum of `P_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExtremumRecord {
    pub n: u64,
    pub value: f64,
    pub log_value: f64,
    pub err: f64,
    pub kind: ExtremumKind,
}

/// Running extremum records of `P_n(alpha)` for `n <= n_max`. A record is
/// kept only when `log P_n` strictly beats every earlier value, so `n = 1`
/// always opens the list.
pub fn extrema_evolution(
    alpha: &RealSpec,
    n_max: u64,
    kind: ExtremumKind,
    precision_bits: u32,
) -> Result<Vec<ExtremumRecord>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let x = alpha.to_irrational(precision_bits)?;
    extrema_of(&x, n_max, kind)
}

pub(crate) fn extrema_of(x: &BigReal, n_max: u64, kind: ExtremumKind) -> Result<Vec<ExtremumRecord>> {
    let mut records: Vec<ExtremumRecord> = Vec::new();
    for point in SudlerSeries::new(x, n_max) {
        let point = point?;
        let better = records
            .last()
            .map_or(true, |r| kind.beats(point.log_p, r.log_value));
        if better {
            records.push(ExtremumRecord {
                n: point.n,
                value: point.p,
                log_value: point.log_p,
                err: point.err,
                kind,
            });
        }
    }
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConjectureClass {
    /// The minimum over the scanned range is `P_1`.
    MinAtOne,
    DecreasingMinima,
}

impl fmt::Display for ConjectureClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConjectureClass::MinAtOne => "min_at_one",
            ConjectureClass::DecreasingMinima => "decreasing_minima",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConjectureProbe {
    pub a: u64,
    pub class: ConjectureClass,
    pub records: Vec<ExtremumRecord>,
}

/// Minima of `P_n` for `alpha = [0; (a)]`, classified by whether any
/// `n > 1` undercuts `P_1`.
pub fn conjecture_probe(a: u64, n_max: u64, precision_bits: u32) -> Result<ConjectureProbe> {
    if a == 0 {
        return Err(Error::InvalidArgument("a must be at least 1".into()));
    }
    let spec = RealSpec::Cf(ContinuedFraction::periodic(vec![a]));
    let records = extrema_evolution(&spec, n_max, ExtremumKind::Min, precision_bits)?;
    let class = if records.len() == 1 {
        ConjectureClass::MinAtOne
    } else {
        ConjectureClass::DecreasingMinima
    };
    Ok(ConjectureProbe { a, class, records })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SandwichSide {
    /// `P_{F_{n-1}} <= P_N`
    Lower,
    /// `P_N <= P_{F_n - 1}`
    Upper,
}

impl fmt::Display for SandwichSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SandwichSide::Lower => "lower",
            SandwichSide::Upper => "upper",
        })
    }
}

/// `N` in the block `[F_{n-1}, F_n - 1]` outside the golden sandwich.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SandwichViolation {
    pub n: u64,
    pub fib_index: u32,
    pub side: SandwichSide,
    /// Log-domain slack of the inequality; negative here, and beyond the
    /// combined error of both sides.
    pub margin: f64,
}

/// Checks `P_{F_{n-1}}(phi) <= P_N(phi) <= P_{F_n - 1}(phi)` for every `N`
/// of every block `[F_{n-1}, F_n - 1]` with `F_n - 1 <= n_max`, `n >= 3`.
pub fn sandwich_check(n_max: u64) -> Result<Vec<SandwichViolation>> {
    if n_max < 2 {
        return Err(Error::InvalidArgument("n_max must be at least F_3 = 2".into()));
    }
    let points: Vec<(f64, f64)> = SudlerSeries::new(&golden_mean(), n_max)
        .map(|p| p.map(|p| (p.log_p, p.err)))
        .collect::<Result<_>>()?;
    let at = |n: u64| points[(n - 1) as usize];

    let mut violations = Vec::new();
    let mut j = 3u32;
    while let Some(fj) = fibonacci(j).filter(|&f| f - 1 <= n_max) {
        let lo_n = fibonacci(j - 1).unwrap();
        let (lo, lo_err) = at(lo_n);
        let (hi, hi_err) = at(fj - 1);
        for n in lo_n..fj {
            let (v, err) = at(n);
            let lower = v - lo;
            if lower < -(err + lo_err) {
                violations.push(SandwichViolation {
                    n,
                    fib_index: j,
                    side: SandwichSide::Lower,
                    margin: lower,
                });
            }
            let upper = hi - v;
            if upper < -(err + hi_err) {
                violations.push(SandwichViolation {
                    n,
                    fib_index: j,
                    side: SandwichSide::Upper,
                    margin: upper,
                });
            }
        }
        j += 1;
    }
    Ok(violations)
}

/// `log P_n / log n` over a scan.
#[derive(Clone, Debug, PartialEq)]
pub struct GrowthReport {
    /// `max log P_n / log n` over `2 <= n <= n_max`.
    pub running_max: f64,
    pub running_max_at: u64,
    /// The same maximum over the tail `[window_start, n_max]`, which drops
    /// the small-`n` transient.
    pub limsup_estimate: f64,
    pub limsup_at: u64,
    pub window_start: u64,
    /// `(n, ratio)` wherever `P_n` sets a new running maximum, `n >= 2`.
    pub peaks: Vec<(u64, f64)>,
}

/// Tail window `[ceil(sqrt(n_max)), n_max]`, at least starting at 2.
fn tail_start(n_max: u64) -> u64 {
    let mut s = (n_max as f64).sqrt() as u64;
    while s * s < n_max {
        s += 1;
    }
    s.max(2)
}

pub fn growth_exponent(alpha: &RealSpec, n_max: u64, precision_bits: u32) -> Result<GrowthReport> {
    if n_max < 100 {
        return Err(Error::InvalidArgument("n_max must be at least 100".into()));
    }
    let x = alpha.to_irrational(precision_bits)?;
    let window_start = tail_start(n_max);
    let mut report = GrowthReport {
        running_max: f64::NEG_INFINITY,
        running_max_at: 0,
        limsup_estimate: f64::NEG_INFINITY,
        limsup_at: 0,
        window_start,
        peaks: Vec::new(),
    };
    let mut best_log_p = f64::NEG_INFINITY;
    for point in SudlerSeries::new(&x, n_max) {
        let point = point?;
        if point.n == 1 {
            best_log_p = point.log_p;
            continue;
        }
        let ratio = point.log_p / (point.n as f64).ln();
        if point.log_p > best_log_p {
            best_log_p = point.log_p;
            report.peaks.push((point.n, ratio));
        }
        if ratio > report.running_max {
            report.running_max = ratio;
            report.running_max_at = point.n;
        }
        if point.n >= window_start && ratio > report.limsup_estimate {
            report.limsup_estimate = ratio;
            report.limsup_at = point.n;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::precision::{NamedConstant, DEFAULT_PRECISION_BITS};

    const P: u32 = DEFAULT_PRECISION_BITS;

    #[test]
    fn records_are_strictly_monotone() {
        let spec = RealSpec::Named(NamedConstant::Pi);
        for kind in [ExtremumKind::Min, ExtremumKind::Max] {
            let recs = extrema_evolution(&spec, 2000, kind, P).unwrap();
            assert_eq!(recs[0].n, 1);
            for w in recs.windows(2) {
                assert!(w[0].n < w[1].n);
                assert!(kind.beats(w[1].log_value, w[0].log_value));
            }
        }
    }

    #[test]
    fn golden_max_records_before_fibonacci() {
        let recs = extrema_evolution(&RealSpec::Named(NamedConstant::Phi), 100, ExtremumKind::Max, P).unwrap();
        let ns: Vec<u64> = recs.iter().map(|r| r.n).collect();
        assert_eq!(ns, vec![1, 2, 4, 7, 12, 20, 33, 54, 88]);
    }

    #[test]
    fn small_block_sandwich() {
        assert!(sandwich_check(1).is_err());
        assert!(sandwich_check(2).unwrap().is_empty());
        assert!(sandwich_check(1000).unwrap().is_empty());
    }

    #[test]
    fn growth_on_short_prefix() {
        let spec = RealSpec::Named(NamedConstant::Sqrt2);
        let g = growth_exponent(&spec, 100, P).unwrap();
        assert_eq!(g.window_start, 10);
        // brute force over the prefix
        let x = spec.to_bigreal(P).unwrap();
        let best = SudlerSeries::new(&x, 100)
            .skip(1)
            .map(|p| {
                let p = p.unwrap();
                p.log_p / (p.n as f64).ln()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(g.running_max, best);
        assert!(growth_exponent(&spec, 99, P).is_err());
    }

    #[test]
    fn tail_window_start() {
        assert_eq!(tail_start(100), 10);
        assert_eq!(tail_start(101), 11);
        assert_eq!(tail_start(100_000), 317);
    }

    #[test]
    fn probe_classes() {
        assert_eq!(conjecture_probe(1, 2000, P).unwrap().class, ConjectureClass::MinAtOne);
        assert_eq!(conjecture_probe(8, 100, P).unwrap().class, ConjectureClass::DecreasingMinima);
        assert!(conjecture_probe(0, 100, P).is_err());
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("MIN".parse::<ExtremumKind>().unwrap(), ExtremumKind::Min);
        assert!("median".parse::<ExtremumKind>().is_err());
    }
}
