//! Numeric backends: `f64` and exact rationals behind one trait.
//!
//! Every statistic in this crate is generic over [`Scalar`]. A decimal edge
//! probability selects the `f64` backend; a probability carrying an exact
//! fraction selects `BigRational`, under which all identity suites hold with
//! residual exactly zero.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num_traits::{FromPrimitive, Signed};

use crate::error::Error;

/// Arithmetic the statistic kernels need, satisfied by `f64` and `BigRational`.
pub trait Scalar: Clone + PartialOrd + Signed + FromPrimitive + fmt::Debug {
    fn from_count(c: u64) -> Self {
        Self::from_u64(c).expect("count representable")
    }

    fn from_int(c: i128) -> Self {
        Self::from_i128(c).expect("integer representable")
    }

    /// Lossy view for reporting; exact backends round to the nearest double.
    fn to_f64_lossy(&self) -> f64;
}

impl Scalar for f64 {
    fn to_f64_lossy(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Edge probability p in the open interval (0, 1).
///
/// Holds an `f64` value always, plus the exact fraction when the caller
/// supplied one. The fraction, when present, is authoritative: statistic
/// pipelines switch to exact rational arithmetic end to end.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeProbability {
    value: f64,
    exact: Option<BigRational>,
}

impl EdgeProbability {
    /// Probability from a plain double. Must satisfy 0 < p < 1.
    pub fn from_f64(p: f64) -> Result<Self, Error> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "edge probability must lie strictly between 0 and 1, got {p}"
            )));
        }
        Ok(Self {
            value: p,
            exact: None,
        })
    }

    /// Exact probability a/b with 0 < a < b.
    pub fn from_ratio(num: u64, den: u64) -> Result<Self, Error> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidArgument(format!(
                "edge probability fraction must satisfy 0 < a < b, got {num}/{den}"
            )));
        }
        let exact = BigRational::new(BigInt::from(num), BigInt::from(den));
        let value = num as f64 / den as f64;
        Ok(Self {
            value,
            exact: Some(exact),
        })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.exact.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// The probability as a scalar of the chosen backend.
    pub fn as_scalar<T: Scalar>(&self) -> T {
        T::from_f64(self.value).expect("probability representable")
    }

    /// The exact rational value; callers must have checked `is_exact`.
    pub fn as_rational(&self) -> BigRational {
        self.exact
            .clone()
            .expect("rational backend requested without an exact fraction")
    }

    /// Complementary probability 1 - p, preserving exactness.
    pub fn complement(&self) -> Self {
        Self {
            value: 1.0 - self.value,
            exact: self
                .exact
                .as_ref()
                .map(|r| BigRational::from_integer(BigInt::from(1)) - r),
        }
    }

    /// Human-readable form: the fraction when exact, the decimal otherwise.
    pub fn display(&self) -> String {
        match &self.exact {
            Some(r) => format!("{}/{}", r.numer(), r.denom()),
            None => format!("{}", self.value),
        }
    }
}

impl FromStr for EdgeProbability {
    type Err = Error;

    /// Accepts a decimal ("0.35") or an exact fraction ("2/5").
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if let Some((a, b)) = s.split_once('/') {
            let num: u64 = a.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("bad fraction numerator in {s:?}"))
            })?;
            let den: u64 = b.trim().parse().map_err(|_| {
                Error::InvalidArgument(format!("bad fraction denominator in {s:?}"))
            })?;
            EdgeProbability::from_ratio(num, den)
        } else {
            let p: f64 = s
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad probability {s:?}")))?;
            EdgeProbability::from_f64(p)
        }
    }
}

/// Exact rational p as used by the `BigRational` backend.
impl EdgeProbability {
    pub fn scalar_rational(&self) -> BigRational {
        match &self.exact {
            Some(r) => r.clone(),
            None => BigRational::from_f64(self.value).expect("finite probability"),
        }
    }
}

/// Binomial coefficient C(n, k) as u128; exact for every size this crate uses.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Falling factorial n (n-1) ... (n-k+1).
pub fn falling(n: u64, k: u64) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc *= (n - i) as u128;
    }
    acc
}

/// SplitMix64 step; used to derive independent sub-seeds deterministically.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_and_fraction() {
        let p: EdgeProbability = "0.3".parse().unwrap();
        assert!(!p.is_exact());
        assert_eq!(p.value(), 0.3);

        let q: EdgeProbability = "2/5".parse().unwrap();
        assert!(q.is_exact());
        assert_eq!(q.value(), 0.4);
        assert_eq!(q.display(), "2/5");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!("0".parse::<EdgeProbability>().is_err());
        assert!("1".parse::<EdgeProbability>().is_err());
        assert!("5/5".parse::<EdgeProbability>().is_err());
        assert!("7/5".parse::<EdgeProbability>().is_err());
        assert!("-0.5".parse::<EdgeProbability>().is_err());
    }

    #[test]
    fn complement_preserves_exactness() {
        let p: EdgeProbability = "1/3".parse().unwrap();
        let q = p.complement();
        assert_eq!(q.display(), "2/3");
        let r: EdgeProbability = "0.25".parse().unwrap();
        assert!(!r.complement().is_exact());
        assert_eq!(r.complement().value(), 0.75);
    }

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(7, 7), 1);
        assert_eq!(binomial(4, 5), 0);
        assert_eq!(binomial(2000, 2), 1_999_000);
        assert_eq!(binomial(52, 5), 2_598_960);
    }

    #[test]
    fn falling_matches_binomial() {
        assert_eq!(falling(7, 3), 7 * 6 * 5);
        assert_eq!(falling(10, 1), 10);
        assert_eq!(falling(10, 0), 1);
    }

    #[test]
    fn splitmix_changes_state() {
        assert_ne!(splitmix64(1), splitmix64(2));
        assert_eq!(splitmix64(42), splitmix64(42));
    }
}
