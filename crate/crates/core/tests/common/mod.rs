#![allow(dead_code)]

use polygcd::{
    parse_poly, verify_certificate, CoefficientDomain, GcdCertificate, ParseTarget, PolySource,
    Polynomial, Rational, RationalField, StepKind,
};
use rand::Rng;

pub fn rp(c: &[i64]) -> Polynomial<Rational> {
    Polynomial::new(c.iter().map(|&n| Rational::from(n)).collect())
}

pub fn rat(text: &str) -> Polynomial<Rational> {
    parse_poly(&PolySource::new(text), &RationalField).expect("valid polynomial text")
}

pub fn parse_in<D: ParseTarget>(dom: &D, text: &str) -> Polynomial<D::Elem> {
    let src = PolySource::new(text).with_params(dom.parameters().to_vec());
    parse_poly(&src, dom).expect("valid polynomial text")
}

/// Random polynomial of exact degree `deg` with coefficients in [-9, 9].
pub fn random_poly(rng: &mut impl Rng, deg: usize) -> Polynomial<Rational> {
    let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-9..=9)).collect();
    while c[deg] == 0 {
        c[deg] = rng.gen_range(-9..=9);
    }
    rp(&c)
}

/// Random pair with degrees ≤ 8; with probability `planted` both share a
/// random factor of degree 1..=3.
pub fn random_pair(
    rng: &mut impl Rng,
    planted: f64,
) -> (Polynomial<Rational>, Polynomial<Rational>) {
    let d = RationalField;
    if rng.gen_bool(planted) {
        let gd = rng.gen_range(1..=3);
        let g = random_poly(rng, gd);
        let (da, db) = (rng.gen_range(0..=8 - gd), rng.gen_range(0..=8 - gd));
        let a = random_poly(rng, da);
        let b = random_poly(rng, db);
        (g.mul(&d, &a), g.mul(&d, &b))
    } else {
        let (da, db) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        (random_poly(rng, da), random_poly(rng, db))
    }
}

/// `u` and `v` are non-zero scalar multiples of each other.
pub fn proportional<D: CoefficientDomain>(
    dom: &D,
    u: &Polynomial<D::Elem>,
    v: &Polynomial<D::Elem>,
) -> bool {
    let (u, v) = (u.trimmed(dom), v.trimmed(dom));
    if u.len() != v.len() || u.is_zero(dom) || v.is_zero(dom) {
        return false;
    }
    let (a, b) = (u.coeffs(), v.coeffs());
    (0..a.len()).all(|i| {
        (0..a.len()).all(|j| dom.is_zero(&dom.sub(&dom.mul(&a[i], &b[j]), &dom.mul(&a[j], &b[i]))))
    })
}

/// Every structural property a run must satisfy, beyond `verify_certificate`.
pub fn structural_problems<D: CoefficientDomain>(
    dom: &D,
    cert: &GcdCertificate<D::Elem>,
) -> Vec<String> {
    let mut out = Vec::new();
    let m = cert.start.level;
    if cert.iteration_steps() > m * (m + 2) {
        out.push(format!(
            "{} steps exceed m(m+2) = {}",
            cert.iteration_steps(),
            m * (m + 2)
        ));
    }
    let mut chain = 0usize;
    for rec in &cert.trace {
        match rec.kind {
            StepKind::Degenerate => {
                chain += 1;
                if chain > m + 1 {
                    out.push(format!("degenerate chain longer than m+1 = {}", m + 1));
                }
                let q = rec.state.q.coeffs();
                if !dom.is_zero(&q[0]) || q.get(1).is_some_and(|c| !dom.is_zero(c)) {
                    out.push("degenerate output with q0 or q1 non-zero".into());
                }
            }
            StepKind::Reduce => chain = 0,
            _ => {}
        }
    }
    out
}

/// Collects invariant results across every run of the acceptance suite.
#[derive(Default)]
pub struct InvariantLog {
    pub runs: usize,
    pub failures: Vec<String>,
}

impl InvariantLog {
    pub fn check<D: CoefficientDomain>(
        &mut self,
        dom: &D,
        label: &str,
        cert: &GcdCertificate<D::Elem>,
        p: &Polynomial<D::Elem>,
        q: &Polynomial<D::Elem>,
    ) -> bool {
        self.runs += 1;
        let report = verify_certificate(dom, cert, p, q);
        let mut ok = true;
        for f in report.failures() {
            ok = false;
            self.failures
                .push(format!("{label}: {} ({})", f.name, f.detail));
        }
        for s in structural_problems(dom, cert) {
            ok = false;
            self.failures.push(format!("{label}: {s}"));
        }
        ok
    }
}
