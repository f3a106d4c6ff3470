//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors ordered graded
//! lexicographically over the declared parameter list, so the last key is the
//! leading monomial.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::CoefficientDomain;
use crate::error::DomainError;

/// Exponent vector, one entry per parameter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when every exponent of `other` is no larger.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Integer and monomial factor common to every term of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialContent {
    pub integer_content: BigInt,
    pub exponent_floor: Vec<u32>,
}

impl MonomialContent {
    pub fn to_multipoly(&self, params: &Arc<[String]>) -> MultiPoly {
        MultiPoly::monomial(
            params.clone(),
            self.integer_content.clone(),
            self.exponent_floor.clone(),
        )
    }

    pub fn is_trivial(&self) -> bool {
        self.integer_content.is_one() && self.exponent_floor.iter().all(|&e| e == 0)
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    params: Arc<[String]>,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(params: Arc<[String]>) -> Self {
        MultiPoly {
            params,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(params: Arc<[String]>, c: impl Into<BigInt>) -> Self {
        let n = params.len();
        Self::monomial(params, c, vec![0; n])
    }

    pub fn monomial(params: Arc<[String]>, c: impl Into<BigInt>, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), params.len(), "exponent vector length");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial(exps), c);
        }
        MultiPoly { params, terms }
    }

    /// The parameter with the given name, as a polynomial.
    pub fn param(params: Arc<[String]>, name: &str) -> Option<Self> {
        let idx = params.iter().position(|p| p == name)?;
        let mut exps = vec![0; params.len()];
        exps[idx] = 1;
        Some(Self::monomial(params, 1, exps))
    }

    pub fn from_terms<I>(params: Arc<[String]>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigInt)>,
    {
        let mut out = MultiPoly::zero(params);
        for (exps, c) in terms {
            assert_eq!(exps.len(), out.params.len(), "exponent vector length");
            out.add_term(Monomial(exps), c);
        }
        out
    }

    pub fn params(&self) -> &Arc<[String]> {
        &self.params
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Leading term under graded lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// The integer value, if this polynomial is constant.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_params(&self, other: &MultiPoly) -> Result<(), DomainError> {
        if Arc::ptr_eq(&self.params, &other.params) || self.params == other.params {
            Ok(())
        } else {
            Err(DomainError::ParameterMismatch {
                left: self.params.to_vec(),
                right: other.params.to_vec(),
            })
        }
    }

    pub fn checked_add(&self, rhs: &MultiPoly) -> Result<MultiPoly, DomainError> {
        self.check_params(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &MultiPoly) -> Result<MultiPoly, DomainError> {
        self.check_params(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &MultiPoly) -> Result<MultiPoly, DomainError> {
        self.check_params(rhs)?;
        let mut out = MultiPoly::zero(self.params.clone());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> MultiPoly {
        if k.is_zero() {
            return MultiPoly::zero(self.params.clone());
        }
        MultiPoly {
            params: self.params.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    fn mul_term(&self, m: &Monomial, k: &BigInt) -> MultiPoly {
        MultiPoly {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, c)| (mm.mul(m), c * k))
                .collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.params.clone(), 1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same parameters");
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base).expect("same parameters");
            }
        }
        acc
    }

    /// Split into positive integer·monomial content and the remainder, which
    /// keeps the sign.
    pub fn monomial_content(&self) -> Result<(MonomialContent, MultiPoly), DomainError> {
        let content = list_content(std::slice::from_ref(self))
            .ok_or(DomainError::ZeroInput("monomial content"))?;
        let divisor = Monomial(content.exponent_floor.clone());
        let remainder = MultiPoly {
            params: self.params.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    (
                        m.div(&divisor).expect("floor divides every term"),
                        c / &content.integer_content,
                    )
                })
                .collect(),
        };
        Ok((content, remainder))
    }

    /// Exact quotient `self / divisor` under graded lex division, or `None`
    /// when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<Option<MultiPoly>, DomainError> {
        self.check_params(divisor)?;
        let (lm_d, lc_d) = divisor.leading_term().ok_or(DomainError::DivisionByZero)?;
        let (lm_d, lc_d) = (lm_d.clone(), lc_d.clone());
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.params.clone());
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            let Some(m) = lm_r.div(&lm_d) else {
                return Ok(None);
            };
            let (k, r) = lc_r.div_rem(&lc_d);
            if !r.is_zero() {
                return Ok(None);
            }
            let step = divisor.mul_term(&m, &k);
            quot.add_term(m, k);
            for (mm, c) in step.terms {
                rem.add_term(mm, -c);
            }
        }
        Ok(Some(quot))
    }

    /// Evaluate at integer values of the parameters.
    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.params.len(), "one value per parameter");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(values).fold(c.clone(), |acc, (&e, v)| {
                    acc * num_traits::pow(v.clone(), e as usize)
                })
            })
            .sum()
    }

    /// Terms in descending order, each rendered without sign as
    /// `k*a^2*b` (with the `k` omitted when it is 1 and a factor exists).
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mut factors: Vec<String> = Vec::new();
                let mag = c.abs();
                let has_vars = !m.is_one();
                if !(mag.is_one() && has_vars) {
                    factors.push(mag.to_string());
                }
                for (name, &e) in self.params.iter().zip(&m.0) {
                    match e {
                        0 => {}
                        1 => factors.push(name.clone()),
                        _ => factors.push(format!("{name}^{e}")),
                    }
                }
                (c.is_negative(), factors.join("*"))
            })
            .collect()
    }
}

/// Exact quotient `dividend / divisor`, `None` when not divisible.
pub fn mp_divides(
    divisor: &MultiPoly,
    dividend: &MultiPoly,
) -> Result<Option<MultiPoly>, DomainError> {
    dividend.div_exact(divisor)
}

fn list_content(items: &[MultiPoly]) -> Option<MonomialContent> {
    let mut integer = BigInt::zero();
    let mut floor: Option<Vec<u32>> = None;
    for p in items {
        for (m, c) in &p.terms {
            integer = integer.gcd(c);
            floor = Some(match floor {
                None => m.0.clone(),
                Some(f) => f.iter().zip(&m.0).map(|(a, b)| *a.min(b)).collect(),
            });
        }
    }
    floor.map(|exponent_floor| MonomialContent {
        integer_content: integer,
        exponent_floor,
    })
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (neg, body)) in self.signed_terms().into_iter().enumerate() {
            match (i, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Integer polynomials in a fixed, ordered list of parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicDomain {
    params: Arc<[String]>,
}

impl SymbolicDomain {
    pub fn new<S: Into<String>>(params: impl IntoIterator<Item = S>) -> Self {
        SymbolicDomain {
            params: params.into_iter().map(Into::into).collect(),
        }
    }

    pub fn params(&self) -> &Arc<[String]> {
        &self.params
    }

    /// Parameter by name.
    ///
    /// # Panics
    /// If the name is not declared.
    pub fn var(&self, name: &str) -> MultiPoly {
        MultiPoly::param(self.params.clone(), name)
            .unwrap_or_else(|| panic!("unknown parameter {name}"))
    }

    pub fn int(&self, n: impl Into<BigInt>) -> MultiPoly {
        MultiPoly::constant(self.params.clone(), n)
    }

    pub fn list_content(&self, items: &[MultiPoly]) -> Option<MonomialContent> {
        list_content(items)
    }
}

impl CoefficientDomain for SymbolicDomain {
    type Elem = MultiPoly;

    fn zero(&self) -> MultiPoly {
        MultiPoly::zero(self.params.clone())
    }

    fn one(&self) -> MultiPoly {
        self.int(1)
    }

    fn from_i64(&self, n: i64) -> MultiPoly {
        self.int(n)
    }

    fn add(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.checked_add(b)
            .expect("operands share the domain's parameters")
    }

    fn sub(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        a.checked_sub(b)
            .expect("operands share the domain's parameters")
    }

    fn mul(&self, a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
        // scalar fast path keeps the engine's constant multipliers cheap
        if let Some(k) = a.as_integer() {
            return b.scale(&k);
        }
        if let Some(k) = b.as_integer() {
            return a.scale(&k);
        }
        a.checked_mul(b)
            .expect("operands share the domain's parameters")
    }

    fn neg(&self, a: &MultiPoly) -> MultiPoly {
        a.neg()
    }

    fn is_zero(&self, a: &MultiPoly) -> bool {
        a.is_zero()
    }

    fn exact_divide(&self, a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, DomainError> {
        a.div_exact(b)?.ok_or(DomainError::NotExact)
    }

    fn content(&self, items: &[MultiPoly]) -> Option<MultiPoly> {
        Some(match list_content(items) {
            Some(c) => c.to_multipoly(&self.params),
            None => self.one(),
        })
    }

    fn unit_divisor(&self, coeffs: &[MultiPoly]) -> MultiPoly {
        let content = self.content(coeffs).expect("content is total");
        let negative = coeffs
            .iter()
            .rev()
            .find(|c| !c.is_zero())
            .and_then(|c| c.leading_term())
            .is_some_and(|(_, k)| k.is_negative());
        if negative {
            content.neg()
        } else {
            content
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> SymbolicDomain {
        SymbolicDomain::new(["a", "b", "c"])
    }

    #[test]
    fn difference_of_squares() {
        let d = abc();
        let (a, b) = (d.var("a"), d.var("b"));
        let lhs = d.add(&a, &b);
        let rhs = d.sub(&a, &b);
        let expected = d.sub(&d.mul(&a, &a), &d.mul(&b, &b));
        assert_eq!(lhs.checked_mul(&rhs).unwrap(), expected);
        assert_eq!(d.add(&expected, &d.zero()), expected);
    }

    #[test]
    fn cancellation_leaves_empty_map() {
        let d = abc();
        let (a, b) = (d.var("a"), d.var("b"));
        let r = d.sub(&d.mul(&b, &d.mul(&a, &b)), &d.mul(&a, &d.mul(&b, &b)));
        assert!(r.is_zero());
        assert_eq!(r.num_terms(), 0);
    }

    #[test]
    fn mismatched_parameters() {
        let p = MultiPoly::param(abc().params().clone(), "a").unwrap();
        let q = MultiPoly::param(SymbolicDomain::new(["a"]).params().clone(), "a").unwrap();
        assert!(matches!(
            p.checked_add(&q),
            Err(DomainError::ParameterMismatch { .. })
        ));
    }

    #[test]
    fn content_examples() {
        let d = SymbolicDomain::new(["a", "b"]);
        let (a, b) = (d.var("a"), d.var("b"));
        // 6a^2b + 9ab^2
        let p = d.add(
            &d.mul(&d.int(6), &d.mul(&d.mul(&a, &a), &b)),
            &d.mul(&d.int(9), &d.mul(&a, &d.mul(&b, &b))),
        );
        let (content, rem) = p.monomial_content().unwrap();
        assert_eq!(content.integer_content, BigInt::from(3));
        assert_eq!(content.exponent_floor, vec![1, 1]);
        assert_eq!(rem, d.add(&d.mul(&d.int(2), &a), &d.mul(&d.int(3), &b)));

        let m = d.mul(&d.int(-8), &a.pow(3));
        let (content, rem) = m.monomial_content().unwrap();
        assert_eq!(content.integer_content, BigInt::from(8));
        assert_eq!(content.exponent_floor, vec![3, 0]);
        assert_eq!(rem, d.int(-1));

        assert!(d.zero().monomial_content().is_err());
    }

    #[test]
    fn cubic_discriminant_has_trivial_content() {
        let d = abc();
        let (a, b, c) = (d.var("a"), d.var("b"), d.var("c"));
        let disc = d.add(
            &d.mul(&d.int(4), &b.pow(3)),
            &d.mul(&d.int(27), &d.mul(&a, &c.pow(2))),
        );
        let (content, rem) = disc.monomial_content().unwrap();
        assert!(content.is_trivial());
        assert_eq!(rem, disc);
    }

    #[test]
    fn exact_division() {
        let d = abc();
        let (a, b) = (d.var("a"), d.var("b"));
        let sum = d.add(&a, &b);
        let sq = d.sub(&a.pow(2), &b.pow(2));
        assert_eq!(mp_divides(&sum, &sq).unwrap(), Some(d.sub(&a, &b)));
        let sq_plus = d.add(&a.pow(2), &b.pow(2));
        assert_eq!(mp_divides(&sum, &sq_plus).unwrap(), None);
        assert_eq!(mp_divides(&d.zero(), &sq), Err(DomainError::DivisionByZero));
        // integer coefficient must divide too
        assert_eq!(mp_divides(&d.int(2), &a).unwrap(), None);
    }

    #[test]
    fn display_descending_grlex() {
        let d = abc();
        let (a, b, c) = (d.var("a"), d.var("b"), d.var("c"));
        let p = d.sub(
            &d.add(
                &d.mul(&d.int(27), &d.mul(&a, &c.pow(2))),
                &d.mul(&d.int(4), &b.pow(3)),
            ),
            &d.int(7),
        );
        assert_eq!(p.to_string(), "27*a*c^2 + 4*b^3 - 7");
        assert_eq!(d.neg(&a).to_string(), "-a");
    }

    #[test]
    fn evaluation() {
        let d = abc();
        let (a, b) = (d.var("a"), d.var("b"));
        let p = d.sub(&d.mul(&a, &b.pow(2)), &d.int(3));
        let v = [BigInt::from(2), BigInt::from(-3), BigInt::from(5)];
        assert_eq!(p.eval(&v), BigInt::from(15));
    }
}
