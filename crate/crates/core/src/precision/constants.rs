use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use super::BigReal;

/// Guard bits carried by the series evaluations.
const GUARD_BITS: u32 = 32;

/// Constants that can be named directly instead of written as a literal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedConstant {
    /// `(sqrt5 - 1) / 2`
    Phi,
    Sqrt2,
    Sqrt3,
    E,
    Pi,
}

impl NamedConstant {
    pub const ALL: [NamedConstant; 5] = [
        NamedConstant::Phi,
        NamedConstant::Sqrt2,
        NamedConstant::Sqrt3,
        NamedConstant::E,
        NamedConstant::Pi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            NamedConstant::Phi => "phi",
            NamedConstant::Sqrt2 => "sqrt2",
            NamedConstant::Sqrt3 => "sqrt3",
            NamedConstant::E => "e",
            NamedConstant::Pi => "pi",
        }
    }
}

impl fmt::Display for NamedConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedConstant {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        NamedConstant::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or(())
    }
}

/// `{e} = e - 2` to `bits` bits, from `sum 1/k!`.
pub(crate) fn frac_e(bits: u32) -> BigReal {
    let work = bits + GUARD_BITS;
    let one = BigUint::one() << work as usize;
    // 1/2! + 1/3! + ...
    let mut term = one >> 1u32;
    let mut sum = BigUint::zero();
    let mut k = 2u32;
    while !term.is_zero() {
        sum += &term;
        k += 1;
        term /= k;
    }
    BigReal::wrap(&BigInt::from(sum >> GUARD_BITS as usize), bits)
}

/// `{pi} = pi - 3` to `bits` bits, from Machin's arctangent formula.
pub(crate) fn frac_pi(bits: u32) -> BigReal {
    let work = bits + GUARD_BITS;
    let one = BigInt::one() << work as usize;
    let pi = 16 * arctan_inv(&one, 5) - 4 * arctan_inv(&one, 239);
    let three = BigInt::from(3) << work as usize;
    BigReal::wrap(&((pi - three) >> GUARD_BITS as usize), bits)
}

/// `one * atan(1/x)` in fixed point.
fn arctan_inv(one: &BigInt, x: u32) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut power = one / x;
    let mut sum = BigInt::zero();
    let mut k = 0u32;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        k += 1;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_and_pi_leading_digits() {
        let e = frac_e(128).to_f64();
        assert!((e - 0.718_281_828_459_045_2).abs() < 1e-16);
        let pi = frac_pi(128).to_f64();
        assert!((pi - 0.141_592_653_589_793_24).abs() < 1e-16);
    }

    #[test]
    fn doubling_precision_is_consistent() {
        for bits in [64u32, 128, 192, 500] {
            for f in [frac_e as fn(u32) -> BigReal, frac_pi] {
                let lo = f(bits);
                let hi = f(2 * bits).with_precision(bits);
                let diff = if lo.mantissa() > hi.mantissa() {
                    lo.mantissa() - hi.mantissa()
                } else {
                    hi.mantissa() - lo.mantissa()
                };
                assert!(diff <= BigUint::one(), "bits={bits}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for c in NamedConstant::ALL {
            assert_eq!(c.name().parse::<NamedConstant>(), Ok(c));
        }
        assert_eq!("PHI".parse::<NamedConstant>(), Ok(NamedConstant::Phi));
        assert!("tau".parse::<NamedConstant>().is_err());
    }
}
