//! Polynomial gcd by division-free head/tail cancellation.
//!
//! Two degree-`m` polynomials are reduced one degree per step using only
//! ring operations and division by x. The run produces the gcd, a Bezout
//! certificate with Laurent cofactors, and, over symbolic coefficients, a
//! terminal constant carrying the resultant or discriminant.
//!
//! ```
//! use polygcd::{parse_poly, run, PolySource, RationalField, RunConfig};
//!
//! let dom = RationalField;
//! let p = parse_poly(&PolySource::new("x^8-4x^6+4x^5-29x^4+20x^3+24x^2+16x+48"), &dom).unwrap();
//! let q = parse_poly(&PolySource::new("x^8+3x^7-7x^4-21x^3-6x^2-18x"), &dom).unwrap();
//! let cert = run(&dom, &p, &q, &RunConfig::default_for(&dom)).unwrap();
//! assert_eq!(polygcd::format_poly(&dom, &cert.gcd, "x"), "x^3 + 3x^2 + x + 3");
//! ```

pub mod domain;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod parse;
pub mod poly;

pub use domain::{
    mp_divides, CoefficientDomain, FloatDomain, Monomial, MonomialContent, MultiPoly, Rational,
    RationalField, SymbolicDomain, DEFAULT_ZERO_TOLERANCE,
};
pub use engine::{
    advance, degenerate_step, delta, normalize, normalize_with, reduce_step, run,
    verify_certificate, Advance, CofactorRow, GcdCertificate, Normalization, Normalized, PairState,
    RunConfig, StepKind, StepRecord, Terminal, VerificationReport,
};
pub use error::{DomainError, EngineError};
pub use oracle::{discriminant, euclid_gcd, sylvester_resultant, SylvesterMatrix};
pub use parse::{format_poly, parse_poly, ParseError, ParseErrorKind, ParseTarget, PolySource};
pub use poly::{laurent_combine, LaurentPolynomial, Polynomial};
