//! Reference implementations used to cross-check the engine: Euclid's
//! remainder sequence and the Sylvester-matrix resultant.

use crate::domain::CoefficientDomain;
use crate::error::{DomainError, EngineError};
use crate::poly::Polynomial;

/// Monic gcd over a field by repeated division.
pub fn euclid_gcd<D: CoefficientDomain>(
    dom: &D,
    p: &Polynomial<D::Elem>,
    q: &Polynomial<D::Elem>,
) -> Result<Polynomial<D::Elem>, EngineError> {
    if !dom.is_field() {
        return Err(DomainError::Unsupported("euclid_gcd needs a field").into());
    }
    if p.is_zero(dom) && q.is_zero(dom) {
        return Err(EngineError::InvalidInput("both polynomials are zero"));
    }
    let (mut a, mut b) = (p.trimmed(dom), q.trimmed(dom));
    while !b.is_zero(dom) {
        let (_, r) = a.divrem(dom, &b)?;
        a = b;
        b = r;
    }
    let lc = a.leading_coeff(dom).expect("non-zero").clone();
    let inv = dom.exact_divide(&dom.one(), &lc)?;
    Ok(a.scale(dom, &inv))
}

/// Classical Sylvester matrix: `deg Q` shifted rows of `P`'s coefficients
/// followed by `deg P` shifted rows of `Q`'s, highest power first.
#[derive(Debug, Clone, PartialEq)]
pub struct SylvesterMatrix<E> {
    pub rows: Vec<Vec<E>>,
}

impl<E: Clone> SylvesterMatrix<E> {
    pub fn new<D: CoefficientDomain<Elem = E>>(
        dom: &D,
        p: &Polynomial<E>,
        q: &Polynomial<E>,
    ) -> Result<Self, EngineError> {
        let (dp, dq) = match (p.degree(dom), q.degree(dom)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(EngineError::InvalidInput("resultant of a zero polynomial")),
        };
        let n = dp + dq;
        let mut rows = Vec::with_capacity(n);
        for (f, df, copies) in [(p, dp, dq), (q, dq, dp)] {
            let desc: Vec<E> = f.coeffs()[..=df].iter().rev().cloned().collect();
            for i in 0..copies {
                let mut row = vec![dom.zero(); n];
                row[i..i + desc.len()].clone_from_slice(&desc);
                rows.push(row);
            }
        }
        Ok(SylvesterMatrix { rows })
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
}

/// Fraction-free (Bareiss) determinant; every division is exact.
fn bareiss<D: CoefficientDomain>(
    dom: &D,
    mut m: Vec<Vec<D::Elem>>,
) -> Result<D::Elem, DomainError> {
    let n = m.len();
    if n == 0 {
        return Ok(dom.one());
    }
    let mut negate = false;
    let mut prev = dom.one();
    for k in 0..n - 1 {
        if dom.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&i| !dom.is_zero(&m[i][k])) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(dom.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = dom.sub(&dom.mul(&m[i][j], &m[k][k]), &dom.mul(&m[i][k], &m[k][j]));
                m[i][j] = dom.exact_divide(&num, &prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { dom.neg(&det) } else { det })
}

/// Gaussian elimination with partial pivoting, for inexact fields.
fn lu_determinant<D: CoefficientDomain>(
    dom: &D,
    mut m: Vec<Vec<D::Elem>>,
) -> Result<D::Elem, DomainError> {
    let n = m.len();
    let mut det = dom.one();
    for k in 0..n {
        let mut piv = k;
        for i in k + 1..n {
            let bigger = dom
                .cmp_abs(&m[i][k], &m[piv][k])
                .ok_or(DomainError::Unsupported("pivoting needs magnitudes"))?;
            if bigger.is_gt() {
                piv = i;
            }
        }
        if dom.is_zero(&m[piv][k]) {
            return Ok(dom.zero());
        }
        if piv != k {
            m.swap(k, piv);
            det = dom.neg(&det);
        }
        det = dom.mul(&det, &m[k][k]);
        for i in k + 1..n {
            let f = dom.exact_divide(&m[i][k], &m[k][k])?;
            let (top, rest) = m.split_at_mut(i);
            for (cell, pk) in rest[0][k..].iter_mut().zip(&top[k][k..]) {
                *cell = dom.sub(cell, &dom.mul(&f, pk));
            }
        }
    }
    Ok(det)
}

/// Determinant of the Sylvester matrix.
pub fn sylvester_resultant<D: CoefficientDomain>(
    dom: &D,
    p: &Polynomial<D::Elem>,
    q: &Polynomial<D::Elem>,
) -> Result<D::Elem, EngineError> {
    let m = SylvesterMatrix::new(dom, p, q)?;
    let det = if dom.is_exact() {
        bareiss(dom, m.rows)?
    } else {
        lu_determinant(dom, m.rows)?
    };
    Ok(det)
}

/// `(-1)^(n(n-1)/2) · res(P, P') / lc(P)` for `deg P = n ≥ 1`.
pub fn discriminant<D: CoefficientDomain>(
    dom: &D,
    p: &Polynomial<D::Elem>,
) -> Result<D::Elem, EngineError> {
    let p = p.trimmed(dom);
    let n = match p.degree(dom) {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(EngineError::InvalidInput(
                "discriminant needs degree at least 1",
            ))
        }
    };
    let res = sylvester_resultant(dom, &p, &p.derivative(dom))?;
    let lc = &p.coeffs()[n];
    let base = dom.exact_divide(&res, lc)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        dom.neg(&base)
    } else {
        base
    })
}
