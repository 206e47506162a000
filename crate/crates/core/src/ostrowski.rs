//! Ostrowski numeration `N = sum_j b_j q_j` in base `alpha`.
//!
//! Digit conditions, with `q_j` indexed as in [`crate::cf`]:
//!
//! 1. `0 <= b_1 <= a_1 - 1` and `0 <= b_j <= a_j` for `j > 1`;
//! 2. `b_j = a_j` implies `b_{j-1} = 0`.
//!
//! For the golden mean `q_j = F_j` and the expansion is Zeckendorf's; since
//! `a_1 = 1` the first position is never used.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::cf::{convergents, ContinuedFraction};
use crate::error::{Error, Result};

/// Sparse digit string: `(j, b_j)` pairs with `b_j > 0`, ascending in `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OstrowskiDigits {
    digits: Vec<(usize, u64)>,
    base: Arc<ContinuedFraction>,
}

impl OstrowskiDigits {
    /// Collects digits without validating them; zero digits are dropped.
    /// Repeated indices are rejected.
    pub fn from_pairs(
        base: Arc<ContinuedFraction>,
        pairs: impl IntoIterator<Item = (usize, u64)>,
    ) -> Result<Self> {
        let mut digits: Vec<(usize, u64)> = pairs.into_iter().filter(|&(_, b)| b != 0).collect();
        digits.sort_unstable();
        if let Some(w) = digits.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidDigits(format!("index {} given twice", w[0].0)));
        }
        Ok(OstrowskiDigits { digits, base })
    }

    pub fn base(&self) -> &ContinuedFraction {
        &self.base
    }

    /// Nonzero digits in ascending index order.
    pub fn nonzero(&self) -> &[(usize, u64)] {
        &self.digits
    }

    /// `b_j` (zero when absent).
    pub fn digit(&self, j: usize) -> u64 {
        self.digits
            .binary_search_by_key(&j, |&(i, _)| i)
            .map_or(0, |k| self.digits[k].1)
    }

    /// Length `z` of the expansion, i.e. the index of the leading digit.
    pub fn z(&self) -> usize {
        self.digits.last().map_or(0, |&(j, _)| j)
    }

    /// Number of nonzero digits.
    pub fn z_sharp(&self) -> usize {
        self.digits.len()
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Checks both digit conditions, naming the one that fails.
    pub fn validate(&self) -> Result<()> {
        for (k, &(j, b)) in self.digits.iter().enumerate() {
            if j == 0 {
                return Err(Error::InvalidDigits("digit indices start at 1".into()));
            }
            let a = self.base.coefficient(j).ok_or(Error::InsufficientCoefficients {
                needed: j,
                available: self.base.available(),
            })?;
            let bound = if j == 1 { a - 1 } else { a };
            if b > bound {
                return Err(Error::InvalidDigits(format!(
                    "condition 1 violated: b_{j} = {b} exceeds {}",
                    if j == 1 { format!("a_1 - 1 = {bound}") } else { format!("a_{j} = {a}") }
                )));
            }
            if j > 1 && b == a && k > 0 && self.digits[k - 1].0 == j - 1 {
                return Err(Error::InvalidDigits(format!(
                    "condition 2 violated: b_{j} = a_{j} = {a} but b_{} = {} is nonzero",
                    j - 1,
                    self.digits[k - 1].1
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for OstrowskiDigits {
    /// Leading digit first, e.g. `b4=1 b2=1`; `0` for the empty expansion.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.digits.iter().rev().map(|(j, b)| format!("b{j}={b}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Convergent denominators of a base, for repeated encoding and decoding.
#[derive(Clone, Debug)]
pub struct OstrowskiBase {
    cf: Arc<ContinuedFraction>,
    /// `q_0, q_1, ...` up to the first one exceeding the covered limit.
    q: Vec<BigUint>,
    /// Prefix of `q` that fits in `u64`.
    q_small: Vec<u64>,
}

impl OstrowskiBase {
    /// Base able to encode every `N <= limit`.
    pub fn new(cf: ContinuedFraction, limit: &BigUint) -> Result<Self> {
        let mut count = 8usize;
        let q = loop {
            let table = match convergents(&cf, count) {
                Ok(t) => t,
                Err(Error::InsufficientCoefficients { .. }) => {
                    // finite expansion: the last denominator must exceed the limit
                    let all = convergents(&cf, cf.preperiod().len() + 2)?;
                    if all.q(all.len() - 1) <= limit {
                        return Err(Error::InsufficientCoefficients {
                            needed: cf.preperiod().len() + 1,
                            available: cf.preperiod().len(),
                        });
                    }
                    all
                }
                Err(e) => return Err(e),
            };
            if let Some(pos) = table.rows().iter().position(|r| &r.q > limit) {
                break table.rows()[..=pos].iter().map(|r| r.q.clone()).collect::<Vec<_>>();
            }
            count *= 2;
        };
        let q_small = q.iter().map_while(|x| x.to_u64()).collect();
        Ok(OstrowskiBase {
            cf: Arc::new(cf),
            q,
            q_small,
        })
    }

    pub fn continued_fraction(&self) -> &ContinuedFraction {
        &self.cf
    }

    /// `q_j` for the covered range.
    pub fn q(&self, j: usize) -> Option<&BigUint> {
        self.q.get(j)
    }

    /// Largest `N` this base can encode.
    pub fn limit(&self) -> BigUint {
        self.q.last().map(|q| q - 1u32).unwrap_or_default()
    }

    /// Greedy expansion: take the largest `q_j <= N`, digit `floor(N / q_j)`,
    /// recurse on the remainder. `N < q_{j+1} = a_j q_j + q_{j-1}` keeps the
    /// digit within condition 1, and a full digit `a_j` leaves a remainder
    /// below `q_{j-1}`, which forces `b_{j-1} = 0`.
    pub fn encode(&self, n: &BigUint) -> Result<OstrowskiDigits> {
        if let Some(small) = n.to_u64() {
            if self.q_small.len() == self.q.len() || self.q_small.last().is_some_and(|&q| q > small) {
                return self.encode_u64(small);
            }
        }
        let top = self.q.last().expect("nonempty table");
        if n >= top {
            return Err(Error::InvalidArgument(format!("{n} exceeds the base limit {}", top - 1u32)));
        }
        let mut rest = n.clone();
        let mut digits = Vec::new();
        let mut j = self.q.len() - 1;
        while !rest.is_zero() && j >= 1 {
            if self.q[j] <= rest {
                let b = &rest / &self.q[j];
                rest -= &b * &self.q[j];
                digits.push((j, b.to_u64().expect("digit bounded by a_j")));
            }
            j -= 1;
        }
        digits.reverse();
        Ok(OstrowskiDigits {
            digits,
            base: Arc::clone(&self.cf),
        })
    }

    /// [`encode`](Self::encode) for machine-sized `N`.
    pub fn encode_u64(&self, n: u64) -> Result<OstrowskiDigits> {
        let q = &self.q_small;
        if q.len() == self.q.len() && n >= *q.last().expect("nonempty table") {
            return Err(Error::InvalidArgument(format!("{n} exceeds the base limit")));
        }
        let mut rest = n;
        let mut digits = Vec::new();
        let mut j = q.len() - 1;
        while rest != 0 && j >= 1 {
            if q[j] <= rest {
                let b = rest / q[j];
                rest -= b * q[j];
                digits.push((j, b));
            }
            j -= 1;
        }
        digits.reverse();
        Ok(OstrowskiDigits {
            digits,
            base: Arc::clone(&self.cf),
        })
    }

    /// Validates and evaluates `sum b_j q_j`.
    pub fn decode(&self, digits: &OstrowskiDigits) -> Result<BigUint> {
        digits.validate()?;
        let mut total = BigUint::zero();
        for &(j, b) in &digits.digits {
            let q = match self.q.get(j) {
                Some(q) => q.clone(),
                None => convergents(&self.cf, j + 1)?.q(j).clone(),
            };
            total += q * b;
        }
        Ok(total)
    }

    /// Like [`decode`](Self::decode) without allocation, for `u64` results.
    pub fn decode_u64(&self, digits: &OstrowskiDigits) -> Result<u64> {
        digits.validate()?;
        let mut total = 0u64;
        for &(j, b) in &digits.digits {
            let q = *self
                .q_small
                .get(j)
                .ok_or_else(|| Error::InvalidArgument(format!("q_{j} outside the base table")))?;
            total = q
                .checked_mul(b)
                .and_then(|v| total.checked_add(v))
                .ok_or_else(|| Error::InvalidArgument("value overflows u64".into()))?;
        }
        Ok(total)
    }
}

/// Ostrowski expansion of `n` in base `cf`.
pub fn ostrowski_encode(n: &BigUint, cf: &ContinuedFraction) -> Result<OstrowskiDigits> {
    OstrowskiBase::new(cf.clone(), n)?.encode(n)
}

/// Inverse of [`ostrowski_encode`]; rejects digit strings that violate the
/// digit conditions.
pub fn ostrowski_decode(digits: &OstrowskiDigits) -> Result<BigUint> {
    digits.validate()?;
    let z = digits.z();
    if z == 0 {
        return Ok(BigUint::zero());
    }
    let table = convergents(digits.base(), z + 1)?;
    Ok(digits
        .nonzero()
        .iter()
        .map(|&(j, b)| table.q(j) * b)
        .sum())
}

/// Number of nonzero digits.
pub fn z_sharp(digits: &OstrowskiDigits) -> usize {
    digits.z_sharp()
}

/// Partial sums `N_m = q_{n_1} + ... + q_{n_m}` for strictly increasing
/// indices with gaps of at least 2, so that each `N_m` has exactly the unit
/// digits `b_{n_i} = 1`.
pub fn special_sequence(cf: &ContinuedFraction, indices: &[usize]) -> Result<Vec<BigUint>> {
    for (i, &n) in indices.iter().enumerate() {
        if n == 0 {
            return Err(Error::InvalidIndices("indices start at 1".into()));
        }
        if i > 0 && n <= indices[i - 1] + 1 {
            return Err(Error::InvalidIndices(format!(
                "n_{} - n_{} = {} must exceed 1",
                i + 1,
                i,
                n as i64 - indices[i - 1] as i64
            )));
        }
    }
    if indices.first() == Some(&1) && cf.coefficient(1) == Some(1) {
        return Err(Error::InvalidIndices("a unit digit at j = 1 needs a_1 >= 2".into()));
    }
    let Some(&last) = indices.last() else {
        return Ok(Vec::new());
    };
    let table = convergents(cf, last + 1)?;
    let mut sum = BigUint::zero();
    Ok(indices
        .iter()
        .map(|&n| {
            sum += table.q(n);
            sum.clone()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ContinuedFraction {
        ContinuedFraction::periodic(vec![1])
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn zero_has_empty_expansion() {
        let d = ostrowski_encode(&big(0), &golden()).unwrap();
        assert!(d.is_zero());
        assert_eq!(d.z(), 0);
        assert_eq!(z_sharp(&d), 0);
        assert_eq!(ostrowski_decode(&d).unwrap(), big(0));
        assert_eq!(d.to_string(), "0");
    }

    #[test]
    fn four_in_golden_base() {
        let d = ostrowski_encode(&big(4), &golden()).unwrap();
        assert_eq!(d.nonzero(), &[(2, 1), (4, 1)]);
        assert_eq!(d.to_string(), "b4=1 b2=1");
        assert_eq!(z_sharp(&d), 2);
        assert_eq!(ostrowski_decode(&d).unwrap(), big(4));
    }

    #[test]
    fn four_in_golden_base_is_unique_among_short_strings() {
        // every digit vector b_1..b_5 with b_j <= 1 (a_j = 1) and b_1 = 0
        let cf = Arc::new(golden());
        let fib = [0u64, 1, 1, 2, 3, 5];
        let mut hits = Vec::new();
        for mask in 0u32..32 {
            let pairs: Vec<(usize, u64)> =
                (1..=5).filter(|j| mask >> (j - 1) & 1 == 1).map(|j| (j, 1)).collect();
            let d = OstrowskiDigits::from_pairs(Arc::clone(&cf), pairs.clone()).unwrap();
            if d.validate().is_ok() && pairs.iter().map(|&(j, _)| fib[j]).sum::<u64>() == 4 {
                hits.push(pairs);
            }
        }
        assert_eq!(hits, vec![vec![(2, 1), (4, 1)]]);
    }

    #[test]
    fn single_denominators_are_single_digits() {
        let cf = ContinuedFraction::periodic(vec![3, 1, 4]);
        let base = OstrowskiBase::new(cf, &big(100_000)).unwrap();
        for j in 2..12 {
            let q = base.q(j).unwrap().clone();
            let d = base.encode(&q).unwrap();
            assert_eq!(d.nonzero(), &[(j, 1)], "j = {j}");
            assert_eq!(d.z_sharp(), 1);
        }
    }

    #[test]
    fn decode_period_one_two() {
        let cf = Arc::new(ContinuedFraction::periodic(vec![1, 2]));
        let d = OstrowskiDigits::from_pairs(cf, [(3, 1)]).unwrap();
        assert_eq!(ostrowski_decode(&d).unwrap(), big(3));
    }

    #[test]
    fn decode_rejects_invalid_strings() {
        let cf = Arc::new(golden());
        let b1 = OstrowskiDigits::from_pairs(Arc::clone(&cf), [(1, 1)]).unwrap();
        let err = ostrowski_decode(&b1).unwrap_err().to_string();
        assert!(err.contains("condition 1"), "{err}");
        let adjacent = OstrowskiDigits::from_pairs(Arc::clone(&cf), [(3, 1), (4, 1)]).unwrap();
        let err = ostrowski_decode(&adjacent).unwrap_err().to_string();
        assert!(err.contains("condition 2"), "{err}");
        let too_big = OstrowskiDigits::from_pairs(cf, [(5, 2)]).unwrap();
        assert!(ostrowski_decode(&too_big).unwrap_err().to_string().contains("condition 1"));
        let dup = OstrowskiDigits::from_pairs(Arc::new(golden()), [(3, 1), (3, 1)]);
        assert!(dup.is_err());
    }

    #[test]
    fn special_sequences() {
        let n = special_sequence(&golden(), &[2, 4]).unwrap();
        assert_eq!(n, vec![big(1), big(4)]);
        let n = special_sequence(&golden(), &[7]).unwrap();
        assert_eq!(n, vec![big(13)]);

        let seven = ContinuedFraction::periodic(vec![7]);
        // q: 0, 1, 7, 50, 357, 2549, 18200, 129949
        let n = special_sequence(&seven, &[3, 5, 7]).unwrap();
        assert_eq!(n, vec![big(50), big(50 + 2549), big(50 + 2549 + 129_949)]);
        for (m, value) in n.iter().enumerate() {
            let d = ostrowski_encode(value, &seven).unwrap();
            let expected: Vec<(usize, u64)> = [3, 5, 7][..=m].iter().map(|&j| (j, 1)).collect();
            assert_eq!(d.nonzero(), expected.as_slice());
        }
    }

    #[test]
    fn special_sequence_rejects_bad_gaps() {
        assert!(matches!(
            special_sequence(&golden(), &[2, 3]),
            Err(Error::InvalidIndices(_))
        ));
        assert!(special_sequence(&golden(), &[4, 2]).is_err());
        assert!(special_sequence(&golden(), &[1, 3]).is_err());
        assert!(special_sequence(&ContinuedFraction::periodic(vec![2]), &[1, 3]).is_ok());
    }

    #[test]
    fn finite_base_limits() {
        let cf = ContinuedFraction::finite(vec![2, 3]);
        // q: 0, 1, 2, 7
        assert!(OstrowskiBase::new(cf.clone(), &big(6)).is_ok());
        assert!(matches!(
            OstrowskiBase::new(cf, &big(7)),
            Err(Error::InsufficientCoefficients { .. })
        ));
    }

    #[test]
    fn big_values_use_the_wide_path() {
        let cf = ContinuedFraction::periodic(vec![9]);
        let n = BigUint::from(u64::MAX) * 12345u32 + 7u32;
        let d = ostrowski_encode(&n, &cf).unwrap();
        assert_eq!(ostrowski_decode(&d).unwrap(), n);
    }
}
