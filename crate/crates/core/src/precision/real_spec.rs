use std::fmt;
use std::str::FromStr;

use super::constants::{frac_e, frac_pi};
use super::{BigReal, NamedConstant, QuadraticSurd, MIN_PRECISION_BITS};
use crate::cf::{self, CfValue, ContinuedFraction};
use crate::error::{Error, Result};

/// How an irrational `alpha` is specified. Every variant is reduced modulo 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealSpec {
    /// `[0; a_1, ..., (b_1, ..., b_k)]`; an empty period denotes a rational.
    Cf(ContinuedFraction),
    Surd(QuadraticSurd),
    Named(NamedConstant),
}

impl RealSpec {
    /// `floor(2^P * {alpha}) / 2^P`, within `2^-P` of `{alpha}`.
    pub fn to_bigreal(&self, precision_bits: u32) -> Result<BigReal> {
        if precision_bits < MIN_PRECISION_BITS {
            return Err(Error::InvalidArgument(format!(
                "precision {precision_bits} is below the minimum of {MIN_PRECISION_BITS} bits"
            )));
        }
        Ok(match self {
            RealSpec::Cf(c) => match cf::cf_value(c, precision_bits)? {
                CfValue::Surd(s) => s.to_bigreal(precision_bits),
                CfValue::Truncation(x) => x,
            },
            RealSpec::Surd(s) => s.to_bigreal(precision_bits),
            RealSpec::Named(NamedConstant::E) => frac_e(precision_bits),
            RealSpec::Named(NamedConstant::Pi) => frac_pi(precision_bits),
            RealSpec::Named(n) => n.surd().to_bigreal(precision_bits),
        })
    }

    /// Like [`to_bigreal`](Self::to_bigreal) but rejects rational specs.
    pub fn to_irrational(&self, precision_bits: u32) -> Result<BigReal> {
        if self.is_rational() {
            return Err(Error::Rational(self.to_string()));
        }
        self.to_bigreal(precision_bits)
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, RealSpec::Cf(c) if c.period().is_empty())
    }

    /// Exact periodic expansion of `{alpha}`, when one is known without
    /// numerical expansion.
    pub fn continued_fraction(&self) -> Option<ContinuedFraction> {
        match self {
            RealSpec::Cf(c) => Some(c.clone()),
            RealSpec::Named(NamedConstant::Phi) => Some(ContinuedFraction::periodic(vec![1])),
            RealSpec::Named(NamedConstant::Sqrt2) => Some(ContinuedFraction::periodic(vec![2])),
            RealSpec::Named(NamedConstant::Sqrt3) => Some(ContinuedFraction::periodic(vec![1, 2])),
            _ => None,
        }
    }

    /// Continued fraction of `{alpha}` with at least `terms` coefficients,
    /// expanding numerically at `precision_bits` when no exact form is known.
    pub fn coefficients(&self, terms: usize, precision_bits: u32) -> Result<ContinuedFraction> {
        if let Some(c) = self.continued_fraction() {
            return Ok(c);
        }
        let x = self.to_irrational(precision_bits)?;
        let expansion = cf::cf_expand(&x, terms);
        if expansion.cf.preperiod().len() < terms {
            return Err(Error::PrecisionExhausted {
                terms: expansion.cf.preperiod().len(),
            });
        }
        Ok(expansion.cf)
    }
}

impl NamedConstant {
    /// Surd form of the algebraic constants, already reduced modulo 1.
    fn surd(self) -> QuadraticSurd {
        let s = match self {
            NamedConstant::Phi => QuadraticSurd::new(-1, 1, 2, 5u32),
            NamedConstant::Sqrt2 => QuadraticSurd::new(0, 1, 1, 2u32),
            NamedConstant::Sqrt3 => QuadraticSurd::new(0, 1, 1, 3u32),
            NamedConstant::E | NamedConstant::Pi => unreachable!("transcendental"),
        };
        s.expect("valid surd").fract()
    }
}

impl fmt::Display for RealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealSpec::Cf(c) => write!(f, "{c}"),
            RealSpec::Surd(s) => write!(f, "{s}"),
            RealSpec::Named(n) => write!(f, "{n}"),
        }
    }
}

impl FromStr for RealSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(named) = s.parse::<NamedConstant>() {
            return Ok(RealSpec::Named(named));
        }
        let trimmed = s.trim_start();
        if !trimmed.starts_with('[') {
            return Err(Error::InvalidSpec {
                column: s.len() - trimmed.len() + 1,
                message: format!(
                    "expected a continued fraction literal like [0;1,(2,3)] or one of {}",
                    NamedConstant::ALL.map(|c| c.name()).join(", ")
                ),
            });
        }
        cf::parse_literal(s).map(RealSpec::Cf)
    }
}
