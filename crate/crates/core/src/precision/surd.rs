use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::BigReal;
use crate::error::{Error, Result};

/// Trial division gives up beyond this divisor.
const MAX_TRIAL_DIVISOR: u64 = 1 << 24;

/// Exact quadratic irrational `(a + b*sqrt(d)) / c` in canonical form:
/// `d` squarefree and at least 2, `b != 0`, `c > 0`, `gcd(a, b, c) = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigUint,
}

impl QuadraticSurd {
    /// Builds the canonical form of `(a + b*sqrt(d)) / c` for any `d >= 0`.
    /// Fails with [`Error::Rational`] when the value is rational.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigUint>,
    ) -> Result<Self> {
        let (mut a, mut b, mut c, d) = (a.into(), b.into(), c.into(), d.into());
        if c.is_zero() {
            return Err(Error::InvalidArgument("surd denominator is zero".into()));
        }
        let (square, d) = squarefree_split(&d)?;
        if b.is_zero() || d.is_one() || d.is_zero() {
            return Err(Error::Rational(format!("({a} + {b}*sqrt({d}))/{c}")));
        }
        b *= BigInt::from(square);
        if c.is_negative() {
            a = -a;
            b = -b;
            c = -c;
        }
        let g = a.gcd(&b).gcd(&c);
        if !g.is_one() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        Ok(QuadraticSurd { a, b, c, d })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn d(&self) -> &BigUint {
        &self.d
    }

    /// `floor(value)` computed exactly.
    pub fn floor(&self) -> BigInt {
        self.floor_scaled(0)
    }

    /// `floor(value * 2^shift)` exactly, using `floor((A + t)/c)` for
    /// `b > 0` and `floor((A - t - 1)/c)` for `b < 0`, `t = isqrt(b^2 d 4^shift)`.
    fn floor_scaled(&self, shift: u32) -> BigInt {
        let scale = shift as usize;
        let big_a = &self.a << scale;
        let radicand = (self.b.magnitude() * self.b.magnitude() * &self.d) << (2 * scale);
        let t = BigInt::from_biguint(Sign::Plus, radicand.sqrt());
        let numerator = if self.b.is_positive() {
            big_a + t
        } else {
            // radicand is never a perfect square, so ceil(sqrt) = t + 1
            big_a - t - 1
        };
        numerator.div_floor(&self.c)
    }

    /// Fractional part to `precision_bits` bits, error below `2^-P`.
    pub fn to_bigreal(&self, precision_bits: u32) -> BigReal {
        BigReal::wrap(&self.floor_scaled(precision_bits), precision_bits)
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let c = self.c.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (a + b * d.sqrt()) / c
    }

    /// Fractional part `x - floor(x)` as another surd.
    pub fn fract(&self) -> Self {
        let fl = self.floor();
        QuadraticSurd::new(&self.a - fl * &self.c, self.b.clone(), self.c.clone(), self.d.clone())
            .expect("shifting by an integer keeps the value irrational")
    }

    /// Applies `x -> (p x + q) / (r x + s)`.
    pub fn mobius(&self, p: &BigInt, q: &BigInt, r: &BigInt, s: &BigInt) -> Result<Self> {
        let d = BigInt::from_biguint(Sign::Plus, self.d.clone());
        // numerator and denominator, both over c
        let u1 = p * &self.a + q * &self.c;
        let v1 = p * &self.b;
        let u2 = r * &self.a + s * &self.c;
        let v2 = r * &self.b;
        let den = &u2 * &u2 - &v2 * &v2 * &d;
        if den.is_zero() {
            return Err(Error::InvalidArgument("Mobius map has a pole at this surd".into()));
        }
        let a = &u1 * &u2 - &v1 * &v2 * &d;
        let b = &v1 * &u2 - &u1 * &v2;
        QuadraticSurd::new(a, b, den, self.d.clone())
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "({} {} {}*sqrt({}))/{}", self.a, sign, self.b.abs(), self.d, self.c)
    }
}

/// Splits `n` into `(s, d)` with `n = s^2 d` and `d` squarefree.
///
/// Trial division runs while `p^3 <= rest`; the leftover cofactor then has
/// at most two prime factors, so it is squarefree unless it is a square.
fn squarefree_split(n: &BigUint) -> Result<(BigUint, BigUint)> {
    if n.is_zero() {
        return Ok((BigUint::zero(), BigUint::zero()));
    }
    let mut rest = n.clone();
    let mut square = BigUint::one();
    let mut free = BigUint::one();
    let mut p = 2u64;
    loop {
        let pb = BigUint::from(p);
        if &pb * &pb * &pb > rest {
            break;
        }
        if p > MAX_TRIAL_DIVISOR {
            return Err(Error::DiscriminantTooLarge { bits: n.bits() });
        }
        let mut count = 0u32;
        while (&rest % p).is_zero() {
            rest /= p;
            count += 1;
        }
        if count > 0 {
            square *= pb.pow(count / 2);
            if count % 2 == 1 {
                free *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let root = rest.sqrt();
    if &root * &root == rest {
        square *= root;
    } else {
        free *= rest;
    }
    Ok((square, free))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_reduces() {
        // (2 + 2 sqrt 20)/4 = (1 + 2 sqrt 5)/2
        let s = QuadraticSurd::new(2, 2, 4, 20u32).unwrap();
        assert_eq!(s, QuadraticSurd::new(1, 2, 2, 5u32).unwrap());
        assert_eq!(s.d(), &BigUint::from(5u32));
        // negative denominator flips signs
        let t = QuadraticSurd::new(1, -1, -2, 5u32).unwrap();
        assert_eq!(t.c(), &BigInt::from(2));
        assert_eq!(t.b(), &BigInt::from(1));
    }

    #[test]
    fn rational_values_rejected() {
        assert!(matches!(QuadraticSurd::new(1, 1, 1, 4u32), Err(Error::Rational(_))));
        assert!(matches!(QuadraticSurd::new(1, 0, 1, 5u32), Err(Error::Rational(_))));
    }

    #[test]
    fn squarefree_split_covers_cofactor_cases() {
        let cases: [(u64, u64, u64); 6] = [
            (12, 2, 3),
            (49, 7, 1),
            (1_000_003 * 1_000_003, 1_000_003, 1),
            (2 * 1_000_003 * 1_000_033, 1, 2 * 1_000_003 * 1_000_033),
            (72, 6, 2),
            (1, 1, 1),
        ];
        for (n, s, d) in cases {
            let (gs, gd) = squarefree_split(&BigUint::from(n)).unwrap();
            assert_eq!((gs, gd), (BigUint::from(s), BigUint::from(d)), "n={n}");
        }
    }

    #[test]
    fn golden_surd_value() {
        let phi = QuadraticSurd::new(-1, 1, 2, 5u32).unwrap();
        assert!((phi.to_f64() - 0.618_033_988_749_894_8).abs() < 1e-15);
        let x = phi.to_bigreal(128).to_f64();
        assert!((x - 0.618_033_988_749_894_8).abs() < 1e-15);
    }

    #[test]
    fn floor_of_negative_b() {
        // 3 - sqrt 2 = 1.5857...
        let s = QuadraticSurd::new(3, -1, 1, 2u32).unwrap();
        assert_eq!(s.floor(), BigInt::from(1));
        assert!((s.fract().to_f64() - (2.0 - 2f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn mobius_fixed_point() {
        // phi = 1/(1 + phi)
        let phi = QuadraticSurd::new(-1, 1, 2, 5u32).unwrap();
        let one = BigInt::one();
        let zero = BigInt::zero();
        let image = phi.mobius(&zero, &one, &one, &one).unwrap();
        assert_eq!(image, phi);
    }

    #[test]
    fn doubling_precision_agrees() {
        let s = QuadraticSurd::new(7, -3, 11, 13u32).unwrap();
        for bits in [64u32, 128, 192, 333] {
            let lo = s.to_bigreal(bits);
            let hi = s.to_bigreal(2 * bits).with_precision(bits);
            // both are floors of the same value
            assert_eq!(lo, hi);
        }
    }
}
