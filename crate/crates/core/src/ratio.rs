use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Nonnegative rational kept in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(Ratio<BigUint>);

impl ExactRatio {
    /// Panics on a zero denominator.
    pub fn new(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "ExactRatio denominator must be positive");
        ExactRatio(Ratio::new(numer.into(), denom))
    }

    pub fn integer(n: impl Into<BigUint>) -> Self {
        ExactRatio(Ratio::from_integer(n.into()))
    }

    pub fn one() -> Self {
        ExactRatio(Ratio::one())
    }

    pub fn numer(&self) -> &BigUint {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigUint {
        self.0.denom()
    }

    /// `1 + 1/p + … + 1/p^m`
    pub fn geometric(p: u128, m: u32) -> Self {
        let p = BigUint::from(p);
        let pm = p.pow(m);
        let numer = (0..=m).fold(BigUint::zero(), |acc, i| acc + p.pow(i));
        ExactRatio::new(numer, pm)
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad ratio `{s}`"));
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigUint = n.trim().parse().map_err(|_| bad())?;
        let d: BigUint = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(ExactRatio::new(n, d))
    }
}

impl Mul for ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 * rhs.0)
    }
}

impl<'a> Mul<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn mul(self, rhs: &ExactRatio) -> ExactRatio {
        ExactRatio(&self.0 * &rhs.0)
    }
}

impl Add for ExactRatio {
    type Output = ExactRatio;
    fn add(self, rhs: ExactRatio) -> ExactRatio {
        ExactRatio(self.0 + rhs.0)
    }
}

impl std::iter::Product for ExactRatio {
    fn product<I: Iterator<Item = ExactRatio>>(iter: I) -> Self {
        iter.fold(ExactRatio::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_compares() {
        let r = ExactRatio::new(56u32, 18u32);
        assert_eq!(r.to_string(), "28/9");
        assert!(r > ExactRatio::integer(3u32));
        assert_eq!("6/2".parse::<ExactRatio>().unwrap(), ExactRatio::integer(3u32));
        assert!("1/0".parse::<ExactRatio>().is_err());
    }

    #[test]
    fn geometric_sum() {
        assert_eq!(ExactRatio::geometric(2, 2), ExactRatio::new(7u32, 4u32));
        assert_eq!(ExactRatio::geometric(3, 0), ExactRatio::one());
    }
}
