//! Tropical max-plus scalars over the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// An element of the max-plus semifield restricted to `Q ∪ {-inf}`.
///
/// Tropical addition is `max`, tropical multiplication is ordinary `+`.
/// The derived ordering puts `-inf` below every rational, which is the
/// natural order of the semifield (`x <= y` iff `x ⊕ y = y`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Trop(Option<BigRational>);

impl Trop {
    pub const NEG_INF: Trop = Trop(None);

    pub fn finite(value: BigRational) -> Self {
        Trop(Some(value))
    }

    pub fn int(value: i64) -> Self {
        Trop(Some(BigRational::from_integer(BigInt::from(value))))
    }

    /// `numer / denom`; panics when `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Trop(Some(BigRational::new(BigInt::from(numer), BigInt::from(denom))))
    }

    /// The additive zero `-inf`.
    pub fn zero() -> Self {
        Trop::NEG_INF
    }

    /// The multiplicative unit, the rational `0`.
    pub fn one() -> Self {
        Trop(Some(BigRational::zero()))
    }

    pub fn is_neg_inf(&self) -> bool {
        self.0.is_none()
    }

    pub fn value(&self) -> Option<&BigRational> {
        self.0.as_ref()
    }

    /// Tropical sum: `max(self, other)`.
    pub fn oplus(&self, other: &Trop) -> Trop {
        if self >= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Tropical product: `self + other`, absorbing at `-inf`.
    pub fn otimes(&self, other: &Trop) -> Trop {
        match (&self.0, &other.0) {
            (Some(a), Some(b)) => Trop(Some(a + b)),
            _ => Trop::NEG_INF,
        }
    }

    /// `self - other` for finite `other`; `-inf` stays `-inf`.
    ///
    /// Returns `None` when `other` is `-inf` (the residual is `+inf`, which is
    /// not representable).
    pub fn residual(&self, other: &Trop) -> Option<Trop> {
        let b = other.0.as_ref()?;
        Some(match &self.0 {
            Some(a) => Trop(Some(a - b)),
            None => Trop::NEG_INF,
        })
    }
}

impl fmt::Display for Trop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            None => f.write_str("-inf"),
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Trop {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "-inf" {
            return Ok(Trop::NEG_INF);
        }
        let bad =
            || Error::InvalidElement { kernel: "TROP".into(), detail: format!("cannot parse {s:?} as p/q or -inf") };
        let (numer, denom) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| bad())?;
        let denom: BigInt = denom.parse().map_err(|_| bad())?;
        if denom.is_zero() || denom.is_negative() {
            return Err(bad());
        }
        Ok(Trop(Some(BigRational::new(numer, denom))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_plus_arithmetic() {
        let a = Trop::int(-1);
        let b = Trop::ratio(1, 2);
        assert_eq!(a.oplus(&b), b);
        assert_eq!(a.otimes(&b), Trop::ratio(-1, 2));
        assert_eq!(a.otimes(&Trop::NEG_INF), Trop::NEG_INF);
        assert_eq!(Trop::NEG_INF.oplus(&a), a);
        assert!(Trop::NEG_INF < Trop::int(-1000));
    }

    #[test]
    fn parse_and_print_are_canonical() {
        for s in ["0", "-1/2", "-inf", "7", "3/4"] {
            assert_eq!(s.parse::<Trop>().unwrap().to_string(), s);
        }
        assert_eq!("2/4".parse::<Trop>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<Trop>().is_err());
        assert!("inf".parse::<Trop>().is_err());
        assert!("1/-2".parse::<Trop>().is_err());
    }

    #[test]
    fn residual_skips_neg_inf_divisor() {
        assert_eq!(Trop::int(0).residual(&Trop::int(-1)), Some(Trop::int(1)));
        assert_eq!(Trop::NEG_INF.residual(&Trop::int(2)), Some(Trop::NEG_INF));
        assert_eq!(Trop::int(0).residual(&Trop::NEG_INF), None);
    }
}
