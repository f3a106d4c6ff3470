//! Fixed benchmark inputs, shared by the criterion benches.

use polygcd::{parse_poly, PolySource, Polynomial, Rational, RationalField, SymbolicDomain};

pub const COPRIME: (&str, &str) = ("x^8+x^6-3x^4-3x^3+8x^2+2x-5", "3x^6+5x^4-4x^2-9x+21");
pub const PLANTED: (&str, &str) = (
    "x^8-4x^6+4x^5-29x^4+20x^3+24x^2+16x+48",
    "x^8+3x^7-7x^4-21x^3-6x^2-18x",
);

pub fn rational(text: &str) -> Polynomial<Rational> {
    parse_poly(&PolySource::new(text), &RationalField).expect("fixture parses")
}

pub fn rational_pair((p, q): (&str, &str)) -> (Polynomial<Rational>, Polynomial<Rational>) {
    (rational(p), rational(q))
}

/// Dense degree-`n` polynomial with small coefficients from a fixed
/// quadratic-residue pattern, so runs are reproducible.
pub fn dense(n: usize, salt: i64) -> Polynomial<Rational> {
    let coeffs = (0..=n as i64)
        .map(|i| Rational::from((i * i + salt * i + 3 * salt + 1).rem_euclid(19) - 9))
        .map(|c| {
            if c == Rational::from(0) {
                Rational::from(1)
            } else {
                c
            }
        })
        .collect();
    Polynomial::new(coeffs)
}

/// `(x^m + a x + b, m x^(m-1) + a)` over the parameters `a, b`.
pub fn trinomial(
    m: u32,
) -> (
    SymbolicDomain,
    Polynomial<polygcd::MultiPoly>,
    Polynomial<polygcd::MultiPoly>,
) {
    let dom = SymbolicDomain::new(["a", "b"]);
    let src = |t: String| PolySource::new(t).with_params(["a", "b"]);
    let p = parse_poly(&src(format!("x^{m} + a*x + b")), &dom).expect("fixture parses");
    let q = parse_poly(&src(format!("{m}x^{} + a", m - 1)), &dom).expect("fixture parses");
    (dom, p, q)
}

/// The general quartic `a x^4 + b x^2 + c x + d` and its derivative.
pub fn quartic() -> (
    SymbolicDomain,
    Polynomial<polygcd::MultiPoly>,
    Polynomial<polygcd::MultiPoly>,
) {
    let dom = SymbolicDomain::new(["a", "b", "c", "d"]);
    let src = |t: &str| PolySource::new(t).with_params(["a", "b", "c", "d"]);
    let p = parse_poly(&src("a*x^4 + b*x^2 + c*x + d"), &dom).expect("fixture parses");
    let q = p.derivative(&dom);
    (dom, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polygcd::CoefficientDomain;

    #[test]
    fn dense_fixture_has_full_degree() {
        for n in [4, 8, 16, 32] {
            let p = dense(n, 5);
            assert_eq!(p.degree(&RationalField), Some(n));
            assert!(p.coeffs().iter().all(|c| !RationalField.is_zero(c)));
        }
    }

    #[test]
    fn symbolic_fixtures_parse() {
        let (dom, p, q) = trinomial(6);
        assert_eq!(p.degree(&dom), Some(6));
        assert_eq!(q.degree(&dom), Some(5));
        let (dom, p, q) = quartic();
        assert_eq!((p.degree(&dom), q.degree(&dom)), (Some(4), Some(3)));
    }
}
