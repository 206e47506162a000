use num_bigint::BigUint;
use proptest::prelude::*;
use sudler::analysis::{
    extrema_evolution, subsequence_limits, threshold_k, threshold_predicate, ExtremumKind,
    SubseqOptions,
};
use sudler::cf::{cf_expand, convergents, parse_literal, ContinuedFraction};
use sudler::ostrowski::{ostrowski_decode, ostrowski_encode, OstrowskiBase};
use sudler::precision::{RealSpec, DEFAULT_PRECISION_BITS};
use sudler::sudler::{double_product, golden_mean, sudler_point, SudlerSeries};

const P: u32 = DEFAULT_PRECISION_BITS;

fn any_cf() -> impl Strategy<Value = ContinuedFraction> {
    (prop::collection::vec(1u64..=20, 0..4), prop::collection::vec(1u64..=20, 1..4))
        .prop_map(|(pre, per)| ContinuedFraction::new(pre, per).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn literal_display_round_trip(cf in any_cf()) {
        prop_assert_eq!(parse_literal(&cf.to_string()).unwrap(), cf);
    }

    #[test]
    fn convergents_approximate(cf in any_cf()) {
        let alpha = RealSpec::Cf(cf.clone()).to_bigreal(256).unwrap().to_f64();
        let table = convergents(&cf, 12).unwrap();
        for n in 2..11 {
            let (p, q) = (table.p(n), table.q(n));
            let q1 = table.q(n + 1);
            let p = p.to_string().parse::<f64>().unwrap();
            let qf = q.to_string().parse::<f64>().unwrap();
            let bound = 1.0 / (qf * q1.to_string().parse::<f64>().unwrap());
            prop_assert!((alpha - p / qf).abs() <= bound * (1.0 + 1e-9) + 1e-15);
        }
    }

    #[test]
    fn expansion_recovers_coefficients(cf in any_cf()) {
        let x = RealSpec::Cf(cf.clone()).to_bigreal(512).unwrap();
        let expanded = cf_expand(&x, 20).cf;
        let want = cf.unrolled(expanded.preperiod().len()).unwrap();
        prop_assert_eq!(expanded.preperiod(), &want[..]);
        prop_assert!(expanded.preperiod().len() >= 20);
    }

    #[test]
    fn ostrowski_big_round_trip(cf in any_cf(), words in prop::collection::vec(any::<u32>(), 1..6)) {
        let n = BigUint::new(words);
        let digits = ostrowski_encode(&n, &cf).unwrap();
        digits.validate().unwrap();
        prop_assert_eq!(ostrowski_decode(&digits).unwrap(), n);
    }

    #[test]
    fn double_product_tiles_the_range(n in 1u64..20_000) {
        let factors = double_product(n).unwrap();
        let total: u64 = factors.iter().map(|f| f.modulus).sum();
        prop_assert_eq!(total, n);
        let log: f64 = factors.iter().map(|f| f.log_value).sum();
        let err: f64 = factors.iter().map(|f| f.err).sum();
        let direct = sudler_point(&golden_mean(), n).unwrap();
        prop_assert!((log - direct.log_p).abs() <= 4.0 * (err + direct.err));
    }

    #[test]
    fn threshold_is_minimal(log_m in 802.5f64..1e7) {
        let k = threshold_k(log_m).unwrap();
        prop_assert!(threshold_predicate(&k, log_m));
        prop_assert!(!threshold_predicate(&(&k - 1u32), log_m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn records_match_the_series(period in prop::collection::vec(1u64..=9, 1..3), max in any::<bool>()) {
        let spec = RealSpec::Cf(ContinuedFraction::periodic(period));
        let kind = if max { ExtremumKind::Max } else { ExtremumKind::Min };
        let records = extrema_evolution(&spec, 5000, kind, P).unwrap();
        let series: Vec<_> = SudlerSeries::new(&spec.to_bigreal(P).unwrap(), 5000)
            .map(|p| p.unwrap())
            .collect();
        prop_assert_eq!(records[0].n, 1);
        for w in records.windows(2) {
            match kind {
                ExtremumKind::Min => prop_assert!(w[1].value < w[0].value),
                ExtremumKind::Max => prop_assert!(w[1].value > w[0].value),
            }
        }
        for r in &records {
            let s = &series[(r.n - 1) as usize];
            prop_assert!((s.log_p - r.log_value).abs() <= s.err);
        }
    }

    #[test]
    fn constant_quotient_subsequences_settle(a in 2u64..=8) {
        let cf = ContinuedFraction::periodic(vec![a]);
        let reports = subsequence_limits(&cf, SubseqOptions::new(20)).unwrap();
        let r = &reports[0];
        prop_assert!(r.samples.len() >= 8);
        prop_assert!(r.cauchy_tail < 1e-4, "a = {}: tail {}", a, r.cauchy_tail);
    }
}

/// The golden gap shrinks by a factor of about phi per step and only drops
/// below 1e-4 at m = 22.
#[test]
fn golden_subsequence_settles_late() {
    let cf = ContinuedFraction::periodic(vec![1]);
    let tail = |m| subsequence_limits(&cf, SubseqOptions::new(m)).unwrap()[0].cauchy_tail;
    let (t20, t21, t22) = (tail(20), tail(21), tail(22));
    assert!(t20 > 1e-4 && t21 > 1e-4 && t22 < 1e-4, "{t20} {t21} {t22}");
    assert!((t20 / t21 - 1.618).abs() < 0.01);
}

#[test]
fn base_limit_covers_request() {
    let cf = ContinuedFraction::periodic(vec![3, 1]);
    let base = OstrowskiBase::new(cf, &BigUint::from(10u32).pow(30)).unwrap();
    assert!(base.limit() >= BigUint::from(10u32).pow(30));
}
