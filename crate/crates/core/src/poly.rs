//! Dense univariate polynomials and Laurent polynomials over a coefficient
//! domain.

use crate::domain::CoefficientDomain;
use crate::error::DomainError;

/// Dense polynomial, ascending powers: `coeffs[k]` is the coefficient of x^k.
///
/// The list is never empty and may carry trailing zeros; the engine works on
/// fixed-length lists. The zero polynomial is any all-zero list, reported by
/// `degree() == None`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<E> {
    coeffs: Vec<E>,
}

fn zero_mask<D: CoefficientDomain>(dom: &D, coeffs: &[D::Elem]) -> Vec<bool> {
    if dom.is_exact() {
        coeffs.iter().map(|c| dom.is_zero(c)).collect()
    } else {
        let scale = dom.list_scale(coeffs);
        coeffs.iter().map(|c| dom.is_negligible(c, scale)).collect()
    }
}

impl<E: Clone> Polynomial<E> {
    /// # Panics
    /// On an empty list.
    pub fn new(coeffs: Vec<E>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "polynomial coefficient list must be non-empty"
        );
        Polynomial { coeffs }
    }

    pub fn from_coeffs<D: CoefficientDomain<Elem = E>>(dom: &D, mut coeffs: Vec<E>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(dom.zero());
        }
        Polynomial { coeffs }
    }

    pub fn zero<D: CoefficientDomain<Elem = E>>(dom: &D) -> Self {
        Polynomial {
            coeffs: vec![dom.zero()],
        }
    }

    pub fn constant<D: CoefficientDomain<Elem = E>>(_dom: &D, c: E) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// `c·x^k`
    pub fn monomial<D: CoefficientDomain<Elem = E>>(dom: &D, c: E, k: usize) -> Self {
        let mut coeffs = vec![dom.zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeff(&self, k: usize) -> Option<&E> {
        self.coeffs.get(k)
    }

    /// Largest index holding a non-zero coefficient, `None` for the zero
    /// polynomial. Float coefficients are zero relative to the largest
    /// magnitude in the list.
    pub fn degree<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Option<usize> {
        zero_mask(dom, &self.coeffs).iter().rposition(|z| !z)
    }

    pub fn is_zero<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> bool {
        self.degree(dom).is_none()
    }

    pub fn leading_coeff<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Option<&E> {
        self.degree(dom).map(|d| &self.coeffs[d])
    }

    /// Drop trailing zeros, keeping at least one entry.
    pub fn trimmed<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        match self.degree(dom) {
            Some(d) => Polynomial {
                coeffs: self.coeffs[..=d].to_vec(),
            },
            None => Polynomial::zero(dom),
        }
    }

    /// Pad with zero top coefficients up to `len` entries.
    pub fn padded<D: CoefficientDomain<Elem = E>>(&self, dom: &D, len: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < len {
            coeffs.resize(len, dom.zero());
        }
        Polynomial { coeffs }
    }

    /// Equality ignoring trailing zeros.
    pub fn eq_effective<D: CoefficientDomain<Elem = E>>(&self, dom: &D, other: &Self) -> bool
    where
        E: PartialEq,
    {
        let (a, b) = (self.trimmed(dom), other.trimmed(dom));
        if a.is_zero(dom) && b.is_zero(dom) {
            return true;
        }
        a.coeffs == b.coeffs
    }

    fn zip_with<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
        rhs: &Self,
        f: impl Fn(&E, &E) -> E,
    ) -> Self {
        let n = self.len().max(rhs.len());
        let zero = dom.zero();
        let coeffs = (0..n)
            .map(|k| {
                f(
                    self.coeffs.get(k).unwrap_or(&zero),
                    rhs.coeffs.get(k).unwrap_or(&zero),
                )
            })
            .collect();
        Polynomial { coeffs }
    }

    pub fn add<D: CoefficientDomain<Elem = E>>(&self, dom: &D, rhs: &Self) -> Self {
        self.zip_with(dom, rhs, |a, b| dom.add(a, b))
    }

    pub fn sub<D: CoefficientDomain<Elem = E>>(&self, dom: &D, rhs: &Self) -> Self {
        self.zip_with(dom, rhs, |a, b| dom.sub(a, b))
    }

    pub fn neg<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        self.map(|c| dom.neg(c))
    }

    pub fn mul<D: CoefficientDomain<Elem = E>>(&self, dom: &D, rhs: &Self) -> Self {
        let (a, b) = (self.trimmed(dom), rhs.trimmed(dom));
        let mut coeffs = vec![dom.zero(); a.len() + b.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if dom.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = dom.add(&coeffs[i + j], &dom.mul(x, y));
            }
        }
        Polynomial { coeffs }
    }

    pub fn scale<D: CoefficientDomain<Elem = E>>(&self, dom: &D, c: &E) -> Self {
        self.map(|x| dom.mul(c, x))
    }

    pub fn map(&self, f: impl Fn(&E) -> E) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Multiply by x^k.
    pub fn shift_by_xk<D: CoefficientDomain<Elem = E>>(&self, dom: &D, k: usize) -> Self {
        let mut coeffs = vec![dom.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    /// Quotient and remainder over a field.
    pub fn divrem<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
        den: &Self,
    ) -> Result<(Self, Self), DomainError> {
        if !dom.is_field() {
            return Err(DomainError::Unsupported(
                "polynomial division needs a field",
            ));
        }
        let den = den.trimmed(dom);
        let dd = den.degree(dom).ok_or(DomainError::DivisionByZero)?;
        let lc = den.coeffs[dd].clone();
        let mut rem = self.trimmed(dom).coeffs;
        if rem.len() <= dd {
            return Ok((Polynomial::zero(dom), Polynomial { coeffs: rem }));
        }
        let mut quot = vec![dom.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if dom.is_zero(top) {
                continue;
            }
            let f = dom.exact_divide(top, &lc)?;
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[k + j] = dom.sub(&rem[k + j], &dom.mul(&f, dc));
            }
            // the subtraction cancels exactly in a field; pin it for floats
            rem[k + dd] = dom.zero();
            quot[k] = f;
        }
        rem.truncate(dd.max(1));
        Ok((
            Polynomial { coeffs: quot }.trimmed(dom),
            Polynomial::from_coeffs(dom, rem).trimmed(dom),
        ))
    }

    /// Exact quotient `self / den` over any exact domain with `exact_divide`,
    /// or `None` when `den` does not divide `self`.
    pub fn exact_div<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
        den: &Self,
    ) -> Result<Option<Self>, DomainError> {
        let den = den.trimmed(dom);
        let dd = den.degree(dom).ok_or(DomainError::DivisionByZero)?;
        let lc = den.coeffs[dd].clone();
        let mut rem = self.trimmed(dom).coeffs;
        if self.is_zero(dom) {
            return Ok(Some(Polynomial::zero(dom)));
        }
        if rem.len() <= dd {
            return Ok(None);
        }
        let mut quot = vec![dom.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let top = &rem[k + dd];
            if dom.is_zero(top) {
                continue;
            }
            let f = match dom.exact_divide(top, &lc) {
                Ok(f) => f,
                Err(DomainError::NotExact) => return Ok(None),
                Err(e) => return Err(e),
            };
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[k + j] = dom.sub(&rem[k + j], &dom.mul(&f, dc));
            }
            quot[k] = f;
        }
        if rem.iter().all(|c| dom.is_zero(c)) {
            Ok(Some(Polynomial { coeffs: quot }.trimmed(dom)))
        } else {
            Ok(None)
        }
    }

    /// Split off the largest x^k factor: `self = x^k · rest` with
    /// `rest(0) != 0`.
    pub fn strip_x_power<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
    ) -> Result<(usize, Self), DomainError> {
        let mask = zero_mask(dom, &self.coeffs);
        let k = mask
            .iter()
            .position(|z| !z)
            .ok_or(DomainError::ZeroInput("strip_x_power"))?;
        Ok((
            k,
            Polynomial {
                coeffs: self.coeffs[k..].to_vec(),
            },
        ))
    }

    pub fn derivative<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        let coeffs: Vec<E> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| dom.mul(&dom.from_i64(k as i64), c))
            .collect();
        Polynomial::from_coeffs(dom, coeffs)
    }

    pub fn eval<D: CoefficientDomain<Elem = E>>(&self, dom: &D, x: &E) -> E {
        self.coeffs
            .iter()
            .rev()
            .fold(dom.zero(), |acc, c| dom.add(&dom.mul(&acc, x), c))
    }
}

/// `body(x) · x^(-shift)`.
///
/// Canonical form: either `shift == 0` or the body's constant term is
/// non-zero; the zero value has `shift == 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial<E> {
    body: Polynomial<E>,
    shift: usize,
}

impl<E: Clone> LaurentPolynomial<E> {
    pub fn new<D: CoefficientDomain<Elem = E>>(dom: &D, body: Polynomial<E>, shift: usize) -> Self {
        let body = body.trimmed(dom);
        if body.is_zero(dom) {
            return LaurentPolynomial { body, shift: 0 };
        }
        let mask = zero_mask(dom, &body.coeffs);
        let low = mask.iter().position(|z| !z).unwrap_or(0).min(shift);
        LaurentPolynomial {
            body: Polynomial {
                coeffs: body.coeffs[low..].to_vec(),
            },
            shift: shift - low,
        }
    }

    pub fn from_poly<D: CoefficientDomain<Elem = E>>(dom: &D, p: Polynomial<E>) -> Self {
        Self::new(dom, p, 0)
    }

    pub fn zero<D: CoefficientDomain<Elem = E>>(dom: &D) -> Self {
        LaurentPolynomial {
            body: Polynomial::zero(dom),
            shift: 0,
        }
    }

    pub fn one<D: CoefficientDomain<Elem = E>>(dom: &D) -> Self {
        LaurentPolynomial {
            body: Polynomial::constant(dom, dom.one()),
            shift: 0,
        }
    }

    pub fn body(&self) -> &Polynomial<E> {
        &self.body
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    pub fn is_zero<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> bool {
        self.body.is_zero(dom)
    }

    /// The plain polynomial, when no negative powers remain.
    pub fn to_polynomial(&self) -> Option<Polynomial<E>> {
        (self.shift == 0).then(|| self.body.clone())
    }

    /// Divide by x.
    pub fn div_x<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        Self::new(dom, self.body.clone(), self.shift + 1)
    }

    /// Multiply by x.
    pub fn mul_x<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        if self.shift > 0 {
            LaurentPolynomial {
                body: self.body.clone(),
                shift: self.shift - 1,
            }
        } else if self.is_zero(dom) {
            self.clone()
        } else {
            LaurentPolynomial {
                body: self.body.shift_by_xk(dom, 1),
                shift: 0,
            }
        }
    }

    pub fn scale<D: CoefficientDomain<Elem = E>>(&self, dom: &D, c: &E) -> Self {
        Self::new(dom, self.body.scale(dom, c), self.shift)
    }

    fn with_shift<D: CoefficientDomain<Elem = E>>(&self, dom: &D, shift: usize) -> Polynomial<E> {
        self.body.shift_by_xk(dom, shift - self.shift)
    }

    pub fn add<D: CoefficientDomain<Elem = E>>(&self, dom: &D, rhs: &Self) -> Self {
        let s = self.shift.max(rhs.shift);
        let body = self.with_shift(dom, s).add(dom, &rhs.with_shift(dom, s));
        Self::new(dom, body, s)
    }

    pub fn sub<D: CoefficientDomain<Elem = E>>(&self, dom: &D, rhs: &Self) -> Self {
        let s = self.shift.max(rhs.shift);
        let body = self.with_shift(dom, s).sub(dom, &rhs.with_shift(dom, s));
        Self::new(dom, body, s)
    }

    pub fn mul_poly<D: CoefficientDomain<Elem = E>>(&self, dom: &D, p: &Polynomial<E>) -> Self {
        Self::new(dom, self.body.mul(dom, p), self.shift)
    }

    pub fn eq_effective<D: CoefficientDomain<Elem = E>>(&self, dom: &D, other: &Self) -> bool
    where
        E: PartialEq,
    {
        let a = Self::new(dom, self.body.clone(), self.shift);
        let b = Self::new(dom, other.body.clone(), other.shift);
        a.shift == b.shift && a.body.eq_effective(dom, &b.body)
    }
}

/// `s·p + t·q` as a canonical Laurent polynomial.
pub fn laurent_combine<D: CoefficientDomain>(
    dom: &D,
    s: &LaurentPolynomial<D::Elem>,
    t: &LaurentPolynomial<D::Elem>,
    p: &Polynomial<D::Elem>,
    q: &Polynomial<D::Elem>,
) -> LaurentPolynomial<D::Elem> {
    s.mul_poly(dom, p).add(dom, &t.mul_poly(dom, q))
}
