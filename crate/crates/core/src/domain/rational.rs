use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CoefficientDomain;
use crate::error::DomainError;

/// Exact rational number, always stored reduced with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self, DomainError> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(numer.into(), denom)))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRationalError;

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("malformed rational, expected n or n/d with d > 0")
    }
}

impl std::error::Error for ParseRationalError {}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `n` or `n/d`, with an optional leading `-` on the numerator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| ParseRationalError)?;
        let den: BigInt = match den {
            Some(d) if !d.starts_with(['-', '+']) => d.parse().map_err(|_| ParseRationalError)?,
            Some(_) => return Err(ParseRationalError),
            None => BigInt::one(),
        };
        Rational::new(num, den).map_err(|_| ParseRationalError)
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl CoefficientDomain for RationalField {
    type Elem = Rational;

    fn zero(&self) -> Rational {
        Rational(BigRational::zero())
    }

    fn one(&self) -> Rational {
        Rational(BigRational::one())
    }

    fn from_i64(&self, n: i64) -> Rational {
        Rational::integer(n)
    }

    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        Rational(&a.0 + &b.0)
    }

    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        Rational(&a.0 - &b.0)
    }

    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        Rational(&a.0 * &b.0)
    }

    fn neg(&self, a: &Rational) -> Rational {
        Rational(-&a.0)
    }

    fn is_zero(&self, a: &Rational) -> bool {
        a.0.is_zero()
    }

    fn is_field(&self) -> bool {
        true
    }

    fn exact_divide(&self, a: &Rational, b: &Rational) -> Result<Rational, DomainError> {
        if b.0.is_zero() {
            return Err(DomainError::DivisionByZero);
        }
        Ok(Rational(&a.0 / &b.0))
    }

    fn magnitude(&self, a: &Rational) -> Option<f64> {
        Some(a.to_f64().abs())
    }

    fn abs(&self, a: &Rational) -> Option<Rational> {
        Some(Rational(a.0.abs()))
    }

    fn cmp_abs(&self, a: &Rational, b: &Rational) -> Option<Ordering> {
        Some(a.0.abs().cmp(&b.0.abs()))
    }

    /// gcd of the numerators over lcm of the denominators: dividing by it
    /// leaves coprime integers.
    fn content(&self, items: &[Rational]) -> Option<Rational> {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in items.iter().filter(|c| !c.0.is_zero()) {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Some(self.one());
        }
        Some(Rational(BigRational::new(num, den)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stored_reduced_with_positive_denominator() {
        let r = Rational::new(6, -4).unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn parse_print_round_trip() {
        for s in [
            "0",
            "7",
            "-7",
            "3/4",
            "-22/57",
            "12345678901234567890123/1000",
        ] {
            assert_eq!(s.parse::<Rational>().unwrap().to_string(), s);
        }
        assert_eq!("4/8".parse::<Rational>().unwrap().to_string(), "1/2");
        assert!("1/0".parse::<Rational>().is_err());
        assert!("1/-2".parse::<Rational>().is_err());
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn content_clears_denominators() {
        let d = RationalField;
        let list: Vec<Rational> = [48, 16, 24].iter().map(|&n| Rational::from(n)).collect();
        assert_eq!(d.content(&list).unwrap(), Rational::from(8));
        let list = vec![Rational::new(1, 2).unwrap(), Rational::new(1, 3).unwrap()];
        assert_eq!(d.content(&list).unwrap(), Rational::new(1, 6).unwrap());
        assert_eq!(d.content(&[d.zero()]).unwrap(), d.one());
    }

    #[test]
    fn zero_and_one() {
        let d = RationalField;
        assert!(d.is_zero(&d.zero()));
        assert!(!d.is_zero(&d.one()));
        assert_eq!(
            d.exact_divide(&d.one(), &d.zero()),
            Err(DomainError::DivisionByZero)
        );
    }
}
