//! Continued fractions `[0; a_1, a_2, ...]`, their convergents, exact
//! values of periodic expansions and certified Gauss-map expansion.
//!
//! Indexing follows the convention used throughout this crate, which is
//! shifted by one from the common textbook one:
//!
//! ```text
//! q_0 = 0, q_1 = 1, q_{n+1} = a_n q_n + q_{n-1}
//! p_0 = 1, p_1 = 0, p_{n+1} = a_n p_n + p_{n-1}
//! ```
//!
//! so `q_2 = a_1` (not `q_1 = a_1`), and for the golden mean `q_n` is the
//! Fibonacci number `F_n`. The Ostrowski digits and the digit-wise upper bound
//! depend on this alignment between `a_j` and `q_j`.

mod literal;

pub use literal::parse_literal;

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::precision::{BigReal, QuadraticSurd};

/// Coefficients of `[0; a_1, a_2, ...]`: a preperiod followed by a period
/// that repeats forever. An empty period means the expansion is finite.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuedFraction {
    preperiod: Vec<u64>,
    period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn new(preperiod: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if let Some(i) = preperiod.iter().chain(&period).position(|&a| a == 0) {
            return Err(Error::InvalidArgument(format!(
                "coefficient a_{} is zero; all coefficients must be >= 1",
                i + 1
            )));
        }
        Ok(ContinuedFraction { preperiod, period })
    }

    /// `[0; (period)]`. Panics if a coefficient is zero.
    pub fn periodic(period: Vec<u64>) -> Self {
        Self::new(Vec::new(), period).expect("coefficients must be >= 1")
    }

    /// Finite expansion `[0; coefficients]`. Panics if a coefficient is zero.
    pub fn finite(coefficients: Vec<u64>) -> Self {
        Self::new(coefficients, Vec::new()).expect("coefficients must be >= 1")
    }

    pub fn preperiod(&self) -> &[u64] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u64] {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// `a_i` for `i >= 1`, unrolling the period; `None` past a finite end.
    pub fn coefficient(&self, i: usize) -> Option<u64> {
        if i == 0 {
            return None;
        }
        let pre = self.preperiod.len();
        if i <= pre {
            Some(self.preperiod[i - 1])
        } else if self.period.is_empty() {
            None
        } else {
            Some(self.period[(i - 1 - pre) % self.period.len()])
        }
    }

    /// Number of coefficients available (`usize::MAX` when periodic).
    pub fn available(&self) -> usize {
        if self.is_periodic() {
            usize::MAX
        } else {
            self.preperiod.len()
        }
    }

    /// `a_1, ..., a_count`, or an error if the expansion ends earlier.
    pub fn unrolled(&self, count: usize) -> Result<Vec<u64>> {
        (1..=count)
            .map(|i| {
                self.coefficient(i).ok_or(Error::InsufficientCoefficients {
                    needed: i,
                    available: self.available(),
                })
            })
            .collect()
    }

    /// Largest coefficient appearing anywhere in the expansion.
    pub fn max_coefficient(&self) -> Option<u64> {
        self.preperiod.iter().chain(&self.period).copied().max()
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[0;")?;
        let pre: Vec<String> = self.preperiod.iter().map(u64::to_string).collect();
        write!(f, "{}", pre.join(","))?;
        if !self.period.is_empty() {
            if !pre.is_empty() {
                write!(f, ",")?;
            }
            let per: Vec<String> = self.period.iter().map(u64::to_string).collect();
            write!(f, "({})", per.join(","))?;
        }
        write!(f, "]")
    }
}

/// One row `(n, p_n, q_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    pub n: usize,
    pub p: BigUint,
    pub q: BigUint,
}

/// Convergent rows `n = 0, 1, ..., len - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvergentTable {
    rows: Vec<Convergent>,
}

impl ConvergentTable {
    pub fn rows(&self) -> &[Convergent] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn p(&self, n: usize) -> &BigUint {
        &self.rows[n].p
    }

    pub fn q(&self, n: usize) -> &BigUint {
        &self.rows[n].q
    }

    pub fn get(&self, n: usize) -> Option<&Convergent> {
        self.rows.get(n)
    }
}

/// Convergent table of length `count >= 2` from the shifted recurrences.
pub fn convergents(cf: &ContinuedFraction, count: usize) -> Result<ConvergentTable> {
    if count < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 rows, got {count}")));
    }
    let coefficients = cf.unrolled(count - 2)?;
    let mut rows = Vec::with_capacity(count);
    rows.push(Convergent {
        n: 0,
        p: BigUint::one(),
        q: BigUint::zero(),
    });
    rows.push(Convergent {
        n: 1,
        p: BigUint::zero(),
        q: BigUint::one(),
    });
    for (idx, &a) in coefficients.iter().enumerate() {
        // row n + 1 uses a_n, n = idx + 1
        let n = idx + 1;
        let p = &rows[n].p * a + &rows[n - 1].p;
        let q = &rows[n].q * a + &rows[n - 1].q;
        rows.push(Convergent { n: n + 1, p, q });
    }
    Ok(ConvergentTable { rows })
}

/// Rows of the convergent table while `q_n <= limit`, plus one more row.
pub fn convergents_up_to(cf: &ContinuedFraction, limit: &BigUint) -> Result<ConvergentTable> {
    let mut count = 8;
    loop {
        let table = convergents(cf, count)?;
        if table.q(count - 1) > limit {
            let keep = table.rows.iter().position(|r| &r.q > limit).unwrap() + 1;
            let mut rows = table.rows;
            rows.truncate(keep.max(2));
            return Ok(ConvergentTable { rows });
        }
        count *= 2;
    }
}

/// Value of a continued fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CfValue {
    /// Exact value of a periodic expansion.
    Surd(QuadraticSurd),
    /// Finite expansion evaluated to the requested precision.
    Truncation(BigReal),
}

impl CfValue {
    pub fn into_surd(self) -> Result<QuadraticSurd> {
        match self {
            CfValue::Surd(s) => Ok(s),
            CfValue::Truncation(_) => Err(Error::Rational("finite continued fraction".into())),
        }
    }
}

type Matrix = [BigInt; 4];

fn mobius_product(coefficients: &[u64]) -> Matrix {
    // product of [[0, 1], [1, a]]
    let mut m: Matrix = [BigInt::one(), BigInt::zero(), BigInt::zero(), BigInt::one()];
    for &a in coefficients {
        let a = BigInt::from(a);
        let [p, q, r, s] = m;
        m = [q.clone(), &p + &q * &a, s.clone(), &r + &s * &a];
    }
    m
}

/// Exact surd for a periodic expansion; the finite truncation otherwise.
pub fn cf_value(cf: &ContinuedFraction, precision_bits: u32) -> Result<CfValue> {
    if cf.period.is_empty() {
        let table = convergents(cf, cf.preperiod.len() + 2)?;
        let last = table.rows.last().unwrap();
        let p = BigInt::from_biguint(Sign::Plus, last.p.clone());
        let q = BigInt::from_biguint(Sign::Plus, last.q.clone());
        return BigReal::from_ratio(&p, &q, precision_bits).map(CfValue::Truncation);
    }
    // x = (A x + B) / (C x + D)  =>  C x^2 + (D - A) x - B = 0
    let [a, b, c, d] = mobius_product(&cf.period);
    let diff = &a - &d;
    let disc = &diff * &diff + BigInt::from(4) * &b * &c;
    let (_, disc) = disc.into_parts();
    let tail = QuadraticSurd::new(diff, 1, BigInt::from(2) * &c, disc)?;
    if cf.preperiod.is_empty() {
        return Ok(CfValue::Surd(tail));
    }
    let [p, q, r, s] = mobius_product(&cf.preperiod);
    tail.mobius(&p, &q, &r, &s).map(CfValue::Surd)
}

/// Result of [`cf_expand`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    /// Certified digits as a finite expansion.
    pub cf: ContinuedFraction,
    /// `true` when the precision ran out before `max_terms` digits.
    pub truncated: bool,
}

/// Gauss-map digits of `x`, certified against the enclosure
/// `[m - 1, m + 1] / 2^P` of the true value.
///
/// A digit is emitted only when both ends of the enclosure agree on it, so
/// every returned digit is correct for the exact value.
pub fn cf_expand(x: &BigReal, max_terms: usize) -> Expansion {
    let one = BigUint::one() << x.precision_bits() as usize;
    let m = x.mantissa();
    let mut lo = (if m.is_zero() { BigUint::zero() } else { m - 1u32 }, one.clone());
    let mut hi = ((m + 1u32).min(one.clone()), one);
    let mut digits = Vec::new();
    while digits.len() < max_terms {
        if lo.0.is_zero() || hi.0.is_zero() {
            break;
        }
        let a_lo = &lo.1 / &lo.0;
        let a_hi = &hi.1 / &hi.0;
        if a_lo != a_hi || a_lo.is_zero() {
            break;
        }
        let Ok(a) = u64::try_from(&a_lo) else { break };
        let new_lo = (&hi.1 - &a_lo * &hi.0, hi.0.clone());
        let new_hi = (&lo.1 - &a_lo * &lo.0, lo.0.clone());
        lo = new_lo;
        hi = new_hi;
        digits.push(a);
    }
    Expansion {
        truncated: digits.len() < max_terms,
        cf: ContinuedFraction::finite(digits),
    }
}
