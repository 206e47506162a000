//! Fixed-point reals in `[0, 1)`, fractional parts `{r alpha}` and the
//! stable evaluation of `log |2 sin(pi x)|`.
//!
//! A [`BigReal`] stores `mantissa / 2^P`. Fractional parts of multiples are
//! obtained by one exact integer multiply followed by masking the low `P`
//! bits, so the only error in `{r alpha}` is the representation error of
//! `alpha` itself scaled by `r`. The sine is evaluated in `f64` after the
//! argument has been folded into `(0, 1/2]` with integer arithmetic.

mod constants;
mod real_spec;
mod sum;
mod surd;

pub use constants::NamedConstant;
pub use real_spec::RealSpec;
pub use sum::NeumaierSum;
pub use surd::QuadraticSurd;

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Working precision used unless the caller asks for something else.
pub const DEFAULT_PRECISION_BITS: u32 = 192;

/// Smallest precision accepted by [`RealSpec::to_bigreal`].
pub const MIN_PRECISION_BITS: u32 = 64;

/// Unit roundoff of `f64`.
pub(crate) const EPS: f64 = f64::EPSILON / 2.0;

/// A real number in `[0, 1)` stored as `mantissa / 2^precision_bits`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BigReal {
    mantissa: BigUint,
    precision_bits: u32,
}

impl BigReal {
    pub fn new(mantissa: BigUint, precision_bits: u32) -> Result<Self> {
        if precision_bits == 0 {
            return Err(Error::InvalidArgument("precision must be positive".into()));
        }
        if mantissa.bits() > u64::from(precision_bits) {
            return Err(Error::InvalidArgument(format!(
                "mantissa has {} bits, exceeds precision {precision_bits}",
                mantissa.bits()
            )));
        }
        Ok(BigReal {
            mantissa,
            precision_bits,
        })
    }

    pub fn zero(precision_bits: u32) -> Self {
        BigReal {
            mantissa: BigUint::zero(),
            precision_bits,
        }
    }

    /// Fractional part of `num / den`, rounded down to `precision_bits`.
    pub fn from_ratio(num: &BigInt, den: &BigInt, precision_bits: u32) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        let scaled = num << precision_bits as usize;
        let floor = scaled.div_floor(den);
        Ok(Self::wrap(&floor, precision_bits))
    }

    /// Exact conversion of a finite `f64` in `[0, 1)`.
    pub fn from_f64(x: f64, precision_bits: u32) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::InvalidArgument(format!("{x} is not in [0, 1)")));
        }
        if x == 0.0 {
            return Ok(Self::zero(precision_bits));
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (int_mant, shift) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        // x = int_mant * 2^shift
        let total = i64::from(precision_bits) + shift;
        let m = BigUint::from(int_mant);
        let mantissa = if total >= 0 {
            m << total as usize
        } else {
            m >> (-total) as usize
        };
        Self::new(mantissa, precision_bits)
    }

    /// Reduces an arbitrary integer mantissa modulo `2^precision_bits`.
    pub(crate) fn wrap(value: &BigInt, precision_bits: u32) -> Self {
        let modulus = BigInt::one() << precision_bits as usize;
        let reduced = value.mod_floor(&modulus);
        let (_, mag) = reduced.into_parts();
        BigReal {
            mantissa: mag,
            precision_bits,
        }
    }

    pub fn mantissa(&self) -> &BigUint {
        &self.mantissa
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Nearest `f64`, with relative accuracy preserved for tiny values.
    pub fn to_f64(&self) -> f64 {
        fixed_to_f64(&self.mantissa.to_u64_digits(), self.precision_bits)
    }

    /// `1 - x` computed exactly (as `0` when `x = 0`).
    pub fn complement(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let one = BigUint::one() << self.precision_bits as usize;
        BigReal {
            mantissa: one - &self.mantissa,
            precision_bits: self.precision_bits,
        }
    }

    /// `min(x, 1 - x)` as an `f64` in `[0, 1/2]`.
    pub fn folded_f64(&self) -> f64 {
        let mut limbs = self.mantissa.to_u64_digits();
        let len = limb_count(self.precision_bits);
        limbs.resize(len, 0);
        fold_limbs(&mut limbs, self.precision_bits)
    }

    /// The same value at another precision (truncating when narrowing).
    pub fn with_precision(&self, precision_bits: u32) -> Self {
        let mantissa = if precision_bits >= self.precision_bits {
            &self.mantissa << (precision_bits - self.precision_bits) as usize
        } else {
            &self.mantissa >> (self.precision_bits - precision_bits) as usize
        };
        BigReal {
            mantissa,
            precision_bits,
        }
    }

    /// Signed distance `r * x - p` in units of `2^-P`, i.e. `r * mantissa - p * 2^P`.
    pub(crate) fn scaled_offset(&self, r: &BigUint, p: &BigUint) -> BigInt {
        let lhs = BigInt::from_biguint(Sign::Plus, r * &self.mantissa);
        let rhs = BigInt::from_biguint(Sign::Plus, p << self.precision_bits as usize);
        lhs - rhs
    }
}

/// `{r alpha}` together with a bound on its distance from the exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct FracValue {
    pub x: BigReal,
    pub abs_error: f64,
}

/// Fractional part of `r * alpha` by exact multiply-and-mask.
///
/// The error bound is `r * 2^-P`, inherited from the representation error
/// of `alpha`.
pub fn frac_r_alpha(alpha: &BigReal, r: u64) -> FracValue {
    let bits = alpha.precision_bits;
    let product = &alpha.mantissa * r;
    let mask = (BigUint::one() << bits as usize) - 1u32;
    FracValue {
        x: BigReal {
            mantissa: product & mask,
            precision_bits: bits,
        },
        abs_error: r as f64 * pow2(-i64::from(bits)),
    }
}

/// `log(2 sin(pi x))` for `x` in `(0, 1)`, evaluated through `min(x, 1 - x)`.
///
/// Returns [`Error::RationalPoint`] when `x` cannot be separated from an
/// integer within its error bound.
pub fn log_two_sin(x: &FracValue) -> Result<f64> {
    log_two_sin_folded(x.x.folded_f64(), x.abs_error, 0).map(|(v, _)| v)
}

/// Like [`log_two_sin`], also returning a bound on the absolute error.
pub fn log_two_sin_with_bound(x: &FracValue) -> Result<(f64, f64)> {
    log_two_sin_folded(x.x.folded_f64(), x.abs_error, 0)
}

/// Core of [`log_two_sin`] on an already folded argument `y = min(x, 1-x)`.
///
/// The bound covers f64 rounding in `pi*y`, `sin` and `ln`, plus the
/// propagated argument error `pi * abs_error * cot(pi y)`.
#[inline]
pub(crate) fn log_two_sin_folded(y: f64, abs_error: f64, r: u64) -> Result<(f64, f64)> {
    if y <= abs_error || y == 0.0 {
        return Err(Error::RationalPoint { r });
    }
    let t = PI * y;
    let value = (2.0 * t.sin()).ln();
    let propagated = if abs_error == 0.0 {
        0.0
    } else {
        // Lipschitz constant of log sin on [y - err, y + err].
        PI * abs_error / (PI * (y - abs_error)).tan()
    };
    let bound = 4.0 * EPS * (1.0 + value.abs()) + propagated;
    Ok((value, bound))
}

/// Reusable evaluator of folded `{r alpha}` for many `r`.
///
/// Each call performs a fresh multiply of the full mantissa by `r`; nothing
/// is accumulated between calls. Results are bit-identical to
/// [`frac_r_alpha`] followed by [`BigReal::folded_f64`].
#[derive(Clone, Debug)]
pub struct FracKernel {
    limbs: Vec<u64>,
    scratch: Vec<u64>,
    precision_bits: u32,
    ulp: f64,
}

impl FracKernel {
    pub fn new(alpha: &BigReal) -> Self {
        let len = limb_count(alpha.precision_bits);
        let mut limbs = alpha.mantissa.to_u64_digits();
        limbs.resize(len, 0);
        FracKernel {
            scratch: vec![0; len],
            limbs,
            precision_bits: alpha.precision_bits,
            ulp: pow2(-i64::from(alpha.precision_bits)),
        }
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// `(min({r alpha}, 1 - {r alpha}), abs_error)`.
    #[inline]
    pub fn folded(&mut self, r: u64) -> (f64, f64) {
        let mut carry = 0u128;
        for (dst, &src) in self.scratch.iter_mut().zip(&self.limbs) {
            let t = u128::from(src) * u128::from(r) + carry;
            *dst = t as u64;
            carry = t >> 64;
        }
        let y = fold_limbs(&mut self.scratch, self.precision_bits);
        (y, r as f64 * self.ulp)
    }

    /// `(log(2 sin(pi {r alpha})), error bound)`.
    #[inline]
    pub fn log_two_sin(&mut self, r: u64) -> Result<(f64, f64)> {
        let (y, err) = self.folded(r);
        log_two_sin_folded(y, err, r)
    }
}

fn limb_count(bits: u32) -> usize {
    (bits as usize).div_ceil(64)
}

/// Masks `limbs` to `bits`, replaces the value by `2^bits - value` when it
/// is at least one half, and converts the result to `f64`.
#[inline]
fn fold_limbs(limbs: &mut [u64], bits: u32) -> f64 {
    let top = limbs.len() - 1;
    let top_bits = bits - 64 * top as u32;
    if top_bits < 64 {
        limbs[top] &= (1u64 << top_bits) - 1;
    }
    let half_bit = (limbs[top] >> (top_bits - 1)) & 1;
    if half_bit == 1 {
        // two's complement modulo 2^bits
        let mut borrow = true;
        for limb in limbs.iter_mut() {
            let inv = !*limb;
            let (v, c) = inv.overflowing_add(u64::from(borrow));
            *limb = v;
            borrow = c;
        }
        if top_bits < 64 {
            limbs[top] &= (1u64 << top_bits) - 1;
        }
    }
    fixed_to_f64(limbs, bits)
}

/// Converts the fixed-point value `limbs / 2^bits` to the nearest-ish `f64`
/// (top 64 significant bits, rounded once).
pub(crate) fn fixed_to_f64(limbs: &[u64], bits: u32) -> f64 {
    let Some(i) = limbs.iter().rposition(|&l| l != 0) else {
        return 0.0;
    };
    let lz = limbs[i].leading_zeros();
    let mut hi = limbs[i] << lz;
    if lz > 0 && i > 0 {
        hi |= limbs[i - 1] >> (64 - lz);
    }
    let exp = 64 * i as i64 - i64::from(lz) - i64::from(bits);
    hi as f64 * pow2(exp)
}

/// `2^e` as an exact `f64` for exponents in the normal and subnormal range.
pub(crate) fn pow2(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e >= -1022 {
        f64::from_bits(((e + 1023) as u64) << 52)
    } else if e >= -1074 {
        f64::from_bits(1u64 << (e + 1074))
    } else {
        0.0
    }
}

/// Natural logarithm of a positive big integer.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift as usize).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `|value| / 2^bits` as an `f64` for a signed big integer numerator.
pub(crate) fn bigint_scaled_abs(value: &BigInt, bits: u32) -> f64 {
    let digits = value.magnitude().to_u64_digits();
    fixed_to_f64(&digits, bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn phi(bits: u32) -> BigReal {
        RealSpec::Named(NamedConstant::Phi).to_bigreal(bits).unwrap()
    }

    #[test]
    fn frac_of_zero_and_one_multiples() {
        let a = phi(192);
        let f0 = frac_r_alpha(&a, 0);
        assert!(f0.x.is_zero());
        assert_eq!(f0.abs_error, 0.0);
        assert_eq!(frac_r_alpha(&a, 1).x, a);
    }

    #[test]
    fn frac_of_fifth_multiple_is_phi_to_the_fifth() {
        // F_5 phi = F_4 + phi^5 with phi = (sqrt5 - 1)/2
        let a = phi(192);
        let f = frac_r_alpha(&a, 5);
        let phi_f = (5f64.sqrt() - 1.0) / 2.0;
        let expected = phi_f.powi(5);
        assert!((f.x.to_f64() - expected).abs() < 1e-15);
        assert!((f.x.to_f64() - 0.090_169_943_749_474_24).abs() < 1e-15);
    }

    #[test]
    fn log_two_sin_reference_points() {
        let half = FracValue {
            x: BigReal::from_f64(0.5, 192).unwrap(),
            abs_error: 0.0,
        };
        assert!((log_two_sin(&half).unwrap() - 2f64.ln()).abs() < 1e-15);

        let sixth = FracValue {
            x: BigReal::from_ratio(&BigInt::from(1), &BigInt::from(6), 192).unwrap(),
            abs_error: 0.0,
        };
        assert!(log_two_sin(&sixth).unwrap().abs() < 1e-15);

        let tiny = FracValue {
            x: BigReal::from_f64(1e-8, 192).unwrap(),
            abs_error: 0.0,
        };
        // small-angle oracle: log(2 sin t) = log(2t) - t^2/6 + O(t^4)
        let t = PI * 1e-8;
        let oracle = (2.0 * t).ln() - t * t / 6.0;
        assert!((log_two_sin(&tiny).unwrap() - oracle).abs() < 1e-15);
    }

    #[test]
    fn log_two_sin_rejects_zero() {
        let zero = FracValue {
            x: BigReal::zero(192),
            abs_error: 0.0,
        };
        assert!(matches!(log_two_sin(&zero), Err(Error::RationalPoint { .. })));
        let fuzzy = FracValue {
            x: BigReal::new(BigUint::from(3u32), 192).unwrap(),
            abs_error: 1e-50,
        };
        assert!(log_two_sin(&fuzzy).is_err());
    }

    #[test]
    fn folding_is_exactly_symmetric() {
        let x = BigReal::from_ratio(&BigInt::from(1234567), &BigInt::from(9999991), 192).unwrap();
        let a = FracValue {
            x: x.clone(),
            abs_error: 1e-40,
        };
        let b = FracValue {
            x: x.complement(),
            abs_error: 1e-40,
        };
        assert_eq!(log_two_sin(&a).unwrap(), log_two_sin(&b).unwrap());
    }

    #[test]
    fn kernel_matches_reference_path() {
        for bits in [64, 100, 192, 256, 300] {
            let a = RealSpec::Named(NamedConstant::E).to_bigreal(bits).unwrap();
            let mut k = FracKernel::new(&a);
            for r in [1u64, 2, 3, 17, 1000, 65535, 999_983, u32::MAX as u64] {
                let f = frac_r_alpha(&a, r);
                let (y, err) = k.folded(r);
                assert_eq!(y, f.x.folded_f64(), "bits={bits} r={r}");
                assert_eq!(err, f.abs_error);
            }
        }
    }

    #[test]
    fn fixed_to_f64_handles_tiny_values() {
        let x = BigReal::new(BigUint::one(), 192).unwrap();
        assert_eq!(x.to_f64(), pow2(-192));
        assert_eq!(BigReal::from_f64(0.375, 64).unwrap().to_f64(), 0.375);
    }

    #[test]
    fn pow2_matches_powi() {
        for e in [-1074, -1060, -1022, -200, -1, 0, 1, 52, 1023] {
            assert_eq!(pow2(e), 2f64.powi(e as i32), "e={e}");
        }
    }
}
