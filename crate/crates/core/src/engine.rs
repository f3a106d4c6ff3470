//! Division-free gcd reduction.
//!
//! Each step takes a pair `(P, Q)` of coefficient lists of length `m+1` and
//! either drops both to length `m` by cancelling the constant term (then
//! dividing by x) and the top term, or, when the cross-determinant
//! `Δ = q_m·p_0 - p_m·q_0` vanishes, replaces `Q` by `x·(p_0·Q - q_0·P)`.
//! Both moves preserve the gcd. Alongside the lists every state carries the
//! Laurent cofactors expressing the current polynomials in terms of the
//! inputs, so the final stage yields a Bezout certificate directly.

use crate::domain::{CoefficientDomain, ZeroClass};
use crate::error::{DomainError, EngineError};
use crate::poly::{laurent_combine, LaurentPolynomial, Polynomial};

/// Per-step rescaling applied after every reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    None,
    /// Divide by the sum of absolute values.
    SumAbs,
    /// Divide by the coefficient of largest magnitude, sign included.
    MaxAbs,
    /// Divide by the domain content.
    Primitive,
}

impl Normalization {
    /// Primitive over exact fields, MaxAbs over floats, None otherwise.
    pub fn default_for<D: CoefficientDomain>(dom: &D) -> Self {
        if !dom.is_exact() {
            Normalization::MaxAbs
        } else if dom.is_field() {
            Normalization::Primitive
        } else {
            Normalization::None
        }
    }
}

/// Expresses one polynomial of a stage through the engine inputs:
/// `weight · poly = s·P₀ + t·Q₀`.
///
/// Over fields the weight stays one; it only grows when normalizing by a
/// non-invertible content.
#[derive(Debug, Clone, PartialEq)]
pub struct CofactorRow<E> {
    pub s: LaurentPolynomial<E>,
    pub t: LaurentPolynomial<E>,
    pub weight: E,
}

impl<E: Clone + PartialEq> CofactorRow<E> {
    fn unit<D: CoefficientDomain<Elem = E>>(dom: &D, first: bool) -> Self {
        let (one, zero) = (LaurentPolynomial::one(dom), LaurentPolynomial::zero(dom));
        let (s, t) = if first { (one, zero) } else { (zero, one) };
        CofactorRow {
            s,
            t,
            weight: dom.one(),
        }
    }

    /// Row for `a·X - b·Y` where `X`, `Y` are described by `self` and `other`.
    fn combine<D: CoefficientDomain<Elem = E>>(&self, dom: &D, a: &E, other: &Self, b: &E) -> Self {
        if dom.is_one(&self.weight) && dom.is_one(&other.weight) {
            return CofactorRow {
                s: self.s.scale(dom, a).sub(dom, &other.s.scale(dom, b)),
                t: self.t.scale(dom, a).sub(dom, &other.t.scale(dom, b)),
                weight: dom.one(),
            };
        }
        let a = dom.mul(a, &other.weight);
        let b = dom.mul(b, &self.weight);
        CofactorRow {
            s: self.s.scale(dom, &a).sub(dom, &other.s.scale(dom, &b)),
            t: self.t.scale(dom, &a).sub(dom, &other.t.scale(dom, &b)),
            weight: dom.mul(&self.weight, &other.weight),
        }
    }

    fn div_x<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        CofactorRow {
            s: self.s.div_x(dom),
            t: self.t.div_x(dom),
            weight: self.weight.clone(),
        }
    }

    fn mul_x<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Self {
        CofactorRow {
            s: self.s.mul_x(dom),
            t: self.t.mul_x(dom),
            weight: self.weight.clone(),
        }
    }

    /// Row for `poly / divisor`.
    fn divide<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
        divisor: &E,
    ) -> Result<Self, DomainError> {
        if dom.is_one(divisor) {
            return Ok(self.clone());
        }
        if dom.is_field() {
            let inv = dom.exact_divide(&dom.one(), divisor)?;
            Ok(CofactorRow {
                s: self.s.scale(dom, &inv),
                t: self.t.scale(dom, &inv),
                weight: self.weight.clone(),
            })
        } else {
            Ok(CofactorRow {
                s: self.s.clone(),
                t: self.t.clone(),
                weight: dom.mul(&self.weight, divisor),
            })
        }
    }

    /// Whether `weight·poly = s·P₀ + t·Q₀` holds exactly.
    pub fn holds<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
        poly: &Polynomial<E>,
        p0: &Polynomial<E>,
        q0: &Polynomial<E>,
    ) -> bool {
        let lhs = laurent_combine(dom, &self.s, &self.t, p0, q0);
        let rhs = LaurentPolynomial::from_poly(dom, poly.scale(dom, &self.weight));
        lhs.eq_effective(dom, &rhs)
    }
}

/// One stage of the reduction: two coefficient lists of length `level + 1`
/// and their cofactor rows.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState<E> {
    pub level: usize,
    pub p: Polynomial<E>,
    pub q: Polynomial<E>,
    pub p_row: CofactorRow<E>,
    pub q_row: CofactorRow<E>,
}

impl<E: Clone + PartialEq> PairState<E> {
    /// Initial state for `(P₀, Q₀)`, both padded to the larger length.
    pub fn initial<D: CoefficientDomain<Elem = E>>(
        dom: &D,
        p0: &Polynomial<E>,
        q0: &Polynomial<E>,
    ) -> Self {
        let (p, q) = (p0.trimmed(dom), q0.trimmed(dom));
        let len = p.len().max(q.len());
        PairState {
            level: len - 1,
            p: p.padded(dom, len),
            q: q.padded(dom, len),
            p_row: CofactorRow::unit(dom, true),
            q_row: CofactorRow::unit(dom, false),
        }
    }

    pub fn swapped(&self) -> Self {
        PairState {
            level: self.level,
            p: self.q.clone(),
            q: self.p.clone(),
            p_row: self.q_row.clone(),
            q_row: self.p_row.clone(),
        }
    }

    fn p0(&self) -> &E {
        &self.p.coeffs()[0]
    }

    fn q0(&self) -> &E {
        &self.q.coeffs()[0]
    }

    fn p_top(&self) -> &E {
        &self.p.coeffs()[self.level]
    }

    fn q_top(&self) -> &E {
        &self.q.coeffs()[self.level]
    }

    /// Both cofactor identities against the engine inputs.
    pub fn cofactors_hold<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
        p0: &Polynomial<E>,
        q0: &Polynomial<E>,
    ) -> bool {
        self.p_row.holds(dom, &self.p, p0, q0) && self.q_row.holds(dom, &self.q, p0, q0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Reduce,
    Degenerate,
    Swap,
    StripX,
    Terminal,
}

impl StepKind {
    pub fn name(self) -> &'static str {
        match self {
            StepKind::Reduce => "Reduce",
            StepKind::Degenerate => "Degenerate",
            StepKind::Swap => "Swap",
            StepKind::StripX => "StripX",
            StepKind::Terminal => "Terminal",
        }
    }
}

/// One trace entry. `p_divisor`/`q_divisor` are what the new `P` and `Q`
/// were divided by during normalization (one when untouched); `state` is the
/// stage after the step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord<E> {
    pub kind: StepKind,
    pub delta: E,
    pub p_divisor: E,
    pub q_divisor: E,
    pub level_after: usize,
    pub state: PairState<E>,
}

impl<E: Clone> StepRecord<E> {
    /// Multiplier applied to `P`, when the domain can invert the divisor.
    pub fn alpha<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Option<E> {
        dom.exact_divide(&dom.one(), &self.p_divisor).ok()
    }

    pub fn beta<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Option<E> {
        dom.exact_divide(&dom.one(), &self.q_divisor).ok()
    }
}

/// Why iteration stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Terminal {
    /// One polynomial vanished; the other one is the gcd.
    Proportional { gcd_in_p: bool },
    /// Reached level 0 with two non-zero constants.
    Coprime,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Advance<E> {
    Step(StepRecord<E>),
    Terminal(Terminal),
}

/// `Δ = q_m·p_0 - p_m·q_0`.
pub fn delta<D: CoefficientDomain>(dom: &D, state: &PairState<D::Elem>) -> D::Elem {
    dom.sub(
        &dom.mul(state.q_top(), state.p0()),
        &dom.mul(state.p_top(), state.q0()),
    )
}

fn classify_delta<D: CoefficientDomain>(
    dom: &D,
    state: &PairState<D::Elem>,
    d: &D::Elem,
) -> ZeroClass {
    let scale = dom.list_scale(state.p.coeffs()) * dom.list_scale(state.q.coeffs());
    dom.classify_cross(d, scale)
}

/// `a·u - b·v` entry by entry, with float cancellation residue flushed to
/// zero relative to the operand sizes.
fn cross<D: CoefficientDomain>(
    dom: &D,
    a: &D::Elem,
    u: &[D::Elem],
    b: &D::Elem,
    v: &[D::Elem],
) -> Vec<D::Elem> {
    let scale = if dom.is_exact() {
        1.0
    } else {
        let m = |x: &D::Elem| dom.magnitude(x).unwrap_or(1.0);
        m(a) * dom.list_scale(u) + m(b) * dom.list_scale(v)
    };
    u.iter()
        .zip(v)
        .map(|(x, y)| {
            let c = dom.sub(&dom.mul(a, x), &dom.mul(b, y));
            if !dom.is_exact() && dom.is_negligible(&c, scale) {
                dom.zero()
            } else {
                c
            }
        })
        .collect()
}

/// Non-degenerate reduction, without normalization.
///
/// New `p_k = q_0·p_{k+1} - p_0·q_{k+1}` and `q_k = q_m·p_k - p_m·q_k` for
/// `k < m`. Afterwards `q_0 = Δ` and the top entry of `P` is `-Δ`.
pub fn reduce_step<D: CoefficientDomain>(
    dom: &D,
    state: &PairState<D::Elem>,
) -> Result<PairState<D::Elem>, EngineError> {
    if state.level == 0 {
        return Err(EngineError::Precondition("reduce_step at level 0"));
    }
    let d = delta(dom, state);
    if classify_delta(dom, state, &d) == ZeroClass::Zero {
        return Err(EngineError::Precondition(
            "reduce_step requires a non-zero delta",
        ));
    }
    let m = state.level;
    let (p, q) = (state.p.coeffs(), state.q.coeffs());
    let (p0, q0, pm, qm) = (state.p0(), state.q0(), state.p_top(), state.q_top());
    let new_p = cross(dom, q0, &p[1..], p0, &q[1..]);
    let new_q = cross(dom, qm, &p[..m], pm, &q[..m]);
    Ok(PairState {
        level: m - 1,
        p: Polynomial::new(new_p),
        q: Polynomial::new(new_q),
        p_row: state.p_row.combine(dom, q0, &state.q_row, p0).div_x(dom),
        q_row: state.p_row.combine(dom, qm, &state.q_row, pm),
    })
}

/// Replace `Q` by `x·(p_0·Q - q_0·P)` when `Δ = 0`: the list `p_0·q - q_0·p`
/// ends in `Δ = 0`, so multiplying by x is a right rotation. The new `Q`
/// has zero constant and linear coefficients.
pub fn degenerate_step<D: CoefficientDomain>(
    dom: &D,
    state: &PairState<D::Elem>,
) -> Result<PairState<D::Elem>, EngineError> {
    if dom.is_zero(state.p0()) {
        return Err(EngineError::Precondition(
            "degenerate_step requires p_0 != 0",
        ));
    }
    if state.q.is_zero(dom) {
        return Err(EngineError::Precondition("degenerate_step on a zero Q"));
    }
    let d = delta(dom, state);
    if classify_delta(dom, state, &d) != ZeroClass::Zero {
        return Err(EngineError::Precondition(
            "degenerate_step requires a zero delta",
        ));
    }
    let (p0, q0) = (state.p0(), state.q0());
    let mut combo = cross(dom, p0, state.q.coeffs(), q0, state.p.coeffs());
    // top entry is Δ (up to tolerance); rotating it into slot 0 pins it to zero
    combo.pop();
    let mut rotated = Vec::with_capacity(state.level + 1);
    rotated.push(dom.zero());
    rotated.extend(combo);
    Ok(PairState {
        level: state.level,
        p: state.p.clone(),
        q: Polynomial::new(rotated),
        p_row: state.p_row.clone(),
        q_row: state.q_row.combine(dom, p0, &state.p_row, q0).mul_x(dom),
    })
}

fn divide_list<D: CoefficientDomain>(
    dom: &D,
    poly: &Polynomial<D::Elem>,
    divisor: &D::Elem,
) -> Result<Polynomial<D::Elem>, DomainError> {
    if dom.is_one(divisor) {
        return Ok(poly.clone());
    }
    let coeffs = poly
        .coeffs()
        .iter()
        .map(|c| dom.exact_divide(c, divisor))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Polynomial::new(coeffs))
}

/// The divisor a strategy picks for one polynomial.
pub fn normalization_divisor<D: CoefficientDomain>(
    dom: &D,
    poly: &Polynomial<D::Elem>,
    strategy: Normalization,
) -> Result<D::Elem, EngineError> {
    const NEED_MAGNITUDE: DomainError = DomainError::Unsupported("normalization needs magnitudes");
    if poly.is_zero(dom) {
        return Ok(dom.one());
    }
    let coeffs = poly.coeffs();
    Ok(match strategy {
        Normalization::None => dom.one(),
        Normalization::SumAbs => coeffs.iter().try_fold(dom.zero(), |acc, c| {
            dom.abs(c).map(|a| dom.add(&acc, &a)).ok_or(NEED_MAGNITUDE)
        })?,
        Normalization::MaxAbs => {
            let mut best = &coeffs[0];
            dom.cmp_abs(best, best).ok_or(NEED_MAGNITUDE)?;
            for c in &coeffs[1..] {
                if dom.cmp_abs(c, best).ok_or(NEED_MAGNITUDE)?.is_gt() {
                    best = c;
                }
            }
            best.clone()
        }
        Normalization::Primitive => dom
            .content(coeffs)
            .ok_or(DomainError::Unsupported("normalization needs a content"))?,
    })
}

/// Scale `P` and `Q` (and their rows) by the given divisors.
pub fn normalize_with<D: CoefficientDomain>(
    dom: &D,
    state: &PairState<D::Elem>,
    p_divisor: &D::Elem,
    q_divisor: &D::Elem,
) -> Result<PairState<D::Elem>, EngineError> {
    Ok(PairState {
        level: state.level,
        p: divide_list(dom, &state.p, p_divisor)?,
        q: divide_list(dom, &state.q, q_divisor)?,
        p_row: state.p_row.divide(dom, p_divisor)?,
        q_row: state.q_row.divide(dom, q_divisor)?,
    })
}

/// A normalized state with the divisors applied to `P` and `Q`.
pub type Normalized<E> = (PairState<E>, E, E);

/// Apply a normalization strategy; returns the new state and the divisors
/// used for `P` and `Q`.
pub fn normalize<D: CoefficientDomain>(
    dom: &D,
    state: &PairState<D::Elem>,
    strategy: Normalization,
) -> Result<Normalized<D::Elem>, EngineError> {
    let pd = normalization_divisor(dom, &state.p, strategy)?;
    let qd = normalization_divisor(dom, &state.q, strategy)?;
    let next = normalize_with(dom, state, &pd, &qd)?;
    Ok((next, pd, qd))
}

/// Decide and perform the next move.
pub fn advance<D: CoefficientDomain>(
    dom: &D,
    state: &PairState<D::Elem>,
    strategy: Normalization,
) -> Result<Advance<D::Elem>, EngineError> {
    if state.q.is_zero(dom) {
        return Ok(Advance::Terminal(Terminal::Proportional { gcd_in_p: true }));
    }
    if state.p.is_zero(dom) {
        return Ok(Advance::Terminal(Terminal::Proportional {
            gcd_in_p: false,
        }));
    }
    if state.level == 0 {
        return Ok(Advance::Terminal(Terminal::Coprime));
    }
    let d = delta(dom, state);
    let record = |kind, delta, pd, qd, next: PairState<D::Elem>| StepRecord {
        kind,
        delta,
        p_divisor: pd,
        q_divisor: qd,
        level_after: next.level,
        state: next,
    };
    match classify_delta(dom, state, &d) {
        ZeroClass::Ambiguous { value, threshold } => {
            let mag = dom.magnitude(&d).unwrap_or(value.abs());
            Err(EngineError::ToleranceFailure {
                delta: mag,
                threshold,
            })
        }
        ZeroClass::NonZero => {
            let raw = reduce_step(dom, state)?;
            let (next, pd, qd) = normalize(dom, &raw, strategy)?;
            Ok(Advance::Step(record(StepKind::Reduce, d, pd, qd, next)))
        }
        ZeroClass::Zero if dom.is_zero(state.p0()) => {
            // Δ = 0 with p_0 = 0 forces q_0 != 0 (the gcd has no x factor)
            let next = state.swapped();
            if dom.is_zero(next.p0()) {
                return Err(EngineError::Precondition("both constant terms vanish"));
            }
            Ok(Advance::Step(record(
                StepKind::Swap,
                dom.zero(),
                dom.one(),
                dom.one(),
                next,
            )))
        }
        ZeroClass::Zero => {
            let next = degenerate_step(dom, state)?;
            Ok(Advance::Step(record(
                StepKind::Degenerate,
                dom.zero(),
                dom.one(),
                dom.one(),
                next,
            )))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunConfig {
    pub strategy: Normalization,
    /// Upper bound on trace length; defaults to `(m+1)(m+3) + 4`.
    pub step_limit: Option<usize>,
}

impl RunConfig {
    pub fn new(strategy: Normalization) -> Self {
        RunConfig {
            strategy,
            step_limit: None,
        }
    }

    pub fn default_for<D: CoefficientDomain>(dom: &D) -> Self {
        Self::new(Normalization::default_for(dom))
    }
}

/// Result of a run, with everything needed to re-check it.
///
/// The identity is `s·P₀ + t·Q₀ = scale·gcd`, where `P₀`, `Q₀` are the
/// inputs divided by `x^x_power`. Over fields `scale` is one.
#[derive(Debug, Clone, PartialEq)]
pub struct GcdCertificate<E> {
    /// Unit-normalized gcd of `P₀` and `Q₀` (no factor of x).
    pub gcd: Polynomial<E>,
    /// Power of x common to both inputs.
    pub x_power: usize,
    pub s: LaurentPolynomial<E>,
    pub t: LaurentPolynomial<E>,
    pub scale: E,
    /// `-Δ` of the final reduction, present when level 0 was reached.
    pub terminal_constant: Option<E>,
    pub reduced_inputs: (Polynomial<E>, Polynomial<E>),
    /// Stage the trace starts from: `(P₀, Q₀)` padded, unit cofactors.
    pub start: PairState<E>,
    pub trace: Vec<StepRecord<E>>,
    pub terminal: Terminal,
}

impl<E: Clone + PartialEq> GcdCertificate<E> {
    pub fn is_coprime(&self) -> bool {
        self.terminal == Terminal::Coprime
    }

    /// `gcd · x^x_power`, the gcd of the original inputs.
    pub fn full_gcd<D: CoefficientDomain<Elem = E>>(&self, dom: &D) -> Polynomial<E> {
        self.gcd.shift_by_xk(dom, self.x_power)
    }

    pub fn count(&self, kind: StepKind) -> usize {
        self.trace.iter().filter(|r| r.kind == kind).count()
    }

    /// Iteration steps (Reduce, Degenerate and mid-run Swap records); the
    /// StripX/Swap preprocessing and the Terminal record are not counted.
    pub fn iteration_steps(&self) -> usize {
        self.trace
            .iter()
            .filter(|r| {
                matches!(
                    r.kind,
                    StepKind::Reduce | StepKind::Degenerate | StepKind::Swap
                )
            })
            .count()
    }

    /// Cofactors over a common denominator: `(s̃, t̃, e)` with
    /// `s̃·P₀ + t̃·Q₀ = scale·gcd·x^e` and `s̃`, `t̃` ordinary polynomials.
    pub fn polynomial_form<D: CoefficientDomain<Elem = E>>(
        &self,
        dom: &D,
    ) -> (Polynomial<E>, Polynomial<E>, usize) {
        let e = self.s.shift().max(self.t.shift());
        let lift = |l: &LaurentPolynomial<E>| l.body().shift_by_xk(dom, e - l.shift());
        (lift(&self.s), lift(&self.t), e)
    }
}

fn strip_common<D: CoefficientDomain>(
    dom: &D,
    p: &Polynomial<D::Elem>,
    q: &Polynomial<D::Elem>,
) -> (usize, Polynomial<D::Elem>, Polynomial<D::Elem>) {
    let kp = p.strip_x_power(dom).ok().map(|(k, _)| k);
    let kq = q.strip_x_power(dom).ok().map(|(k, _)| k);
    let k = match (kp, kq) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => 0,
    };
    let down = |f: &Polynomial<D::Elem>| {
        if f.is_zero(dom) {
            Polynomial::zero(dom)
        } else {
            Polynomial::new(f.coeffs()[k..].to_vec()).trimmed(dom)
        }
    };
    (k, down(p), down(q))
}

/// Orientation preference: non-zero, then non-zero constant term, then degree.
fn orientation_key<D: CoefficientDomain>(dom: &D, f: &Polynomial<D::Elem>) -> (bool, bool, usize) {
    match f.degree(dom) {
        None => (false, false, 0),
        Some(d) => (true, !dom.is_zero(&f.coeffs()[0]), d),
    }
}

/// Run the reduction to completion and assemble a certificate.
pub fn run<D: CoefficientDomain>(
    dom: &D,
    p: &Polynomial<D::Elem>,
    q: &Polynomial<D::Elem>,
    config: &RunConfig,
) -> Result<GcdCertificate<D::Elem>, EngineError> {
    if p.is_zero(dom) && q.is_zero(dom) {
        return Err(EngineError::InvalidInput("both polynomials are zero"));
    }
    let (x_power, p0, q0) = strip_common(dom, p, q);
    let start = PairState::initial(dom, &p0, &q0);
    let m = start.level;
    let limit = config.step_limit.unwrap_or((m + 1) * (m + 3) + 4);
    let mut trace = Vec::new();
    let mut state = start.clone();
    let push = |trace: &mut Vec<StepRecord<D::Elem>>, kind, state: &PairState<D::Elem>| {
        trace.push(StepRecord {
            kind,
            delta: dom.zero(),
            p_divisor: dom.one(),
            q_divisor: dom.one(),
            level_after: state.level,
            state: state.clone(),
        })
    };
    if x_power > 0 {
        push(&mut trace, StepKind::StripX, &state);
    }
    if orientation_key(dom, &q0) > orientation_key(dom, &p0) {
        state = state.swapped();
        push(&mut trace, StepKind::Swap, &state);
    }

    let mut steps = 0usize;
    let terminal = loop {
        match advance(dom, &state, config.strategy)? {
            Advance::Terminal(t) => break t,
            Advance::Step(rec) => {
                steps += 1;
                if steps > limit {
                    return Err(EngineError::StepLimit(limit));
                }
                state = rec.state.clone();
                trace.push(rec);
            }
        }
    };
    push(&mut trace, StepKind::Terminal, &state);

    let (stage, row) = match terminal {
        Terminal::Proportional { gcd_in_p: true } | Terminal::Coprime => (&state.p, &state.p_row),
        Terminal::Proportional { gcd_in_p: false } => (&state.q, &state.q_row),
    };
    let stage = stage.trimmed(dom);
    // A terminal constant is a unit over the fraction field: the gcd is 1
    // and the whole constant moves into the identity scale.
    let unit = match terminal {
        Terminal::Coprime => stage.coeffs()[0].clone(),
        Terminal::Proportional { .. } => dom.unit_divisor(stage.coeffs()),
    };
    let gcd = divide_list(dom, &stage, &unit)?;
    let value_scale = dom.mul(&row.weight, &unit);
    let (s, t, scale) = if dom.is_field() {
        let inv = dom.exact_divide(&dom.one(), &value_scale)?;
        (row.s.scale(dom, &inv), row.t.scale(dom, &inv), dom.one())
    } else {
        (row.s.clone(), row.t.clone(), value_scale)
    };
    let terminal_constant = match terminal {
        Terminal::Coprime => Some(
            trace
                .iter()
                .rev()
                .find(|r| r.kind == StepKind::Reduce)
                .map(|r| dom.neg(&r.delta))
                .unwrap_or_else(|| state.p.coeffs()[0].clone()),
        ),
        Terminal::Proportional { .. } => None,
    };
    Ok(GcdCertificate {
        gcd,
        x_power,
        s,
        t,
        scale,
        terminal_constant,
        reduced_inputs: (p0, q0),
        start,
        trace,
        terminal,
    })
}

/// A single named check of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// Replay the trace and check every invariant; returns the first problem.
fn replay<D: CoefficientDomain>(
    dom: &D,
    cert: &GcdCertificate<D::Elem>,
    p0: &Polynomial<D::Elem>,
    q0: &Polynomial<D::Elem>,
) -> Result<(), String> {
    let mut prev = cert.start.clone();
    if prev != PairState::initial(dom, p0, q0) {
        return Err("start state does not match the reduced inputs".into());
    }
    for (i, rec) in cert.trace.iter().enumerate() {
        let expected = match rec.kind {
            StepKind::StripX | StepKind::Terminal => prev.clone(),
            StepKind::Swap => prev.swapped(),
            StepKind::Reduce => {
                let d = delta(dom, &prev);
                if d != rec.delta || dom.is_zero(&d) {
                    return Err(format!("step {i}: recorded delta {} vs {}", rec.delta, d));
                }
                let raw = reduce_step(dom, &prev).map_err(|e| format!("step {i}: {e}"))?;
                let top = &raw.p.coeffs()[raw.level];
                if raw.q.coeffs()[0] != d || *top != dom.neg(&d) {
                    return Err(format!(
                        "step {i}: delta bookkeeping q0 = Δ, p_top = -Δ broken"
                    ));
                }
                normalize_with(dom, &raw, &rec.p_divisor, &rec.q_divisor)
                    .map_err(|e| format!("step {i}: {e}"))?
            }
            StepKind::Degenerate => {
                if !dom.is_zero(&rec.delta) || !dom.is_zero(&delta(dom, &prev)) {
                    return Err(format!("step {i}: degenerate step with non-zero delta"));
                }
                let next = degenerate_step(dom, &prev).map_err(|e| format!("step {i}: {e}"))?;
                let qc = next.q.coeffs();
                if !dom.is_zero(&qc[0]) || qc.get(1).is_some_and(|c| !dom.is_zero(c)) {
                    return Err(format!("step {i}: degenerate output has q0 or q1 non-zero"));
                }
                next
            }
        };
        if expected != rec.state || rec.level_after != rec.state.level {
            return Err(format!(
                "step {i} ({}): recorded state differs from replay",
                rec.kind.name()
            ));
        }
        if !rec.state.cofactors_hold(dom, p0, q0) {
            return Err(format!("step {i}: cofactor identity fails"));
        }
        prev = rec.state.clone();
    }
    if let Some(tc) = &cert.terminal_constant {
        let last = cert.trace.iter().rev().find(|r| r.kind == StepKind::Reduce);
        if let Some(last) = last {
            if *tc != dom.neg(&last.delta) {
                return Err("terminal constant differs from -Δ of the final reduction".into());
            }
        }
        if prev.level != 0 {
            return Err("terminal constant without reaching level 0".into());
        }
    }
    Ok(())
}

/// Check a certificate against the original inputs (exact domains).
pub fn verify_certificate<D: CoefficientDomain>(
    dom: &D,
    cert: &GcdCertificate<D::Elem>,
    p: &Polynomial<D::Elem>,
    q: &Polynomial<D::Elem>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    if !dom.is_exact() {
        report.push(
            "exact domain",
            false,
            "certificates are only verifiable exactly",
        );
        return report;
    }
    let full = cert.full_gcd(dom);
    for (name, f) in [("gcd divides P", p), ("gcd divides Q", q)] {
        let ok = matches!(f.exact_div(dom, &full), Ok(Some(_)));
        report.push(name, ok, if ok { "" } else { "non-zero remainder" });
    }
    let (rp0, rq0) = (
        strip_by(dom, p, cert.x_power),
        strip_by(dom, q, cert.x_power),
    );
    let value = laurent_combine(dom, &cert.s, &cert.t, &rp0, &rq0);
    let target = LaurentPolynomial::from_poly(dom, cert.gcd.scale(dom, &cert.scale));
    report.push(
        "bezout identity",
        value.eq_effective(dom, &target),
        format!(
            "s·P₀ + t·Q₀ has body {:?} shift {}",
            value.body().coeffs(),
            value.shift()
        ),
    );
    let coprime_ok = cert.terminal_constant.is_none() || cert.gcd.degree(dom) == Some(0);
    report.push("terminal constant implies gcd 1", coprime_ok, "");
    match replay(dom, cert, &rp0, &rq0) {
        Ok(()) => report.push("trace invariants", true, ""),
        Err(e) => report.push("trace invariants", false, e),
    }
    report
}

fn strip_by<D: CoefficientDomain>(
    dom: &D,
    f: &Polynomial<D::Elem>,
    k: usize,
) -> Polynomial<D::Elem> {
    if f.is_zero(dom) || k == 0 {
        return f.trimmed(dom);
    }
    let c = f.coeffs();
    Polynomial::new(c[k.min(c.len() - 1)..].to_vec()).trimmed(dom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{FloatDomain, Rational, RationalField};

    fn rp(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&n| Rational::from(n)).collect())
    }

    fn state(p: &[i64], q: &[i64]) -> PairState<Rational> {
        PairState::initial(&RationalField, &rp(p), &rp(q))
    }

    const P8: [i64; 9] = [48, 16, 24, 20, -29, 4, -4, 0, 1];
    const Q8: [i64; 9] = [0, -18, -6, -21, -7, 0, 0, 3, 1];

    #[test]
    fn delta_examples() {
        let d = RationalField;
        assert_eq!(delta(&d, &state(&P8, &Q8)), Rational::from(48));
        assert_eq!(delta(&d, &state(&P8, &P8)), Rational::from(0));
        assert_eq!(delta(&d, &state(&[1, 1, 1], &[2, 1, 2])), Rational::from(0));
    }

    #[test]
    fn first_reduction_on_planted_pair() {
        let d = RationalField;
        let next = reduce_step(&d, &state(&P8, &Q8)).unwrap();
        assert_eq!(next.level, 7);
        assert_eq!(next.p, rp(&[864, 288, 1008, 336, 0, 0, -144, -48]));
        assert_eq!(next.q, rp(&[48, 34, 30, 41, -22, 4, -4, -3]));
    }

    #[test]
    fn linear_pair_reaches_constants() {
        let d = RationalField;
        let next = reduce_step(&d, &state(&[1, 1], &[-1, 1])).unwrap();
        assert_eq!(next.p, rp(&[-2]));
        assert_eq!(next.q, rp(&[2]));
    }

    #[test]
    fn reduce_refuses_zero_delta() {
        let d = RationalField;
        assert!(matches!(
            reduce_step(&d, &state(&[1, 1, 1], &[2, 1, 2])),
            Err(EngineError::Precondition(_))
        ));
    }

    #[test]
    fn degenerate_examples() {
        let d = RationalField;
        let next = degenerate_step(&d, &state(&[1, 1, 1], &[2, 1, 2])).unwrap();
        assert_eq!(next.q, rp(&[0, 0, -1]));
        assert_eq!(next.level, 2);

        // P³ and P³/3
        let p3 = rp(&[3, 1, 3, 1]);
        let q3 = Polynomial::new(
            [1, 1, 1, 1]
                .iter()
                .zip([1, 3, 1, 3])
                .map(|(&n, den)| Rational::new(n, den).unwrap())
                .collect(),
        );
        let next = degenerate_step(&d, &PairState::initial(&d, &p3, &q3)).unwrap();
        assert!(next.q.is_zero(&d));

        let p = rp(&[2, -1, 5]);
        let next = degenerate_step(
            &d,
            &PairState::initial(&d, &p, &p.scale(&d, &Rational::from(-7))),
        )
        .unwrap();
        assert!(next.q.is_zero(&d));
        assert!(degenerate_step(&d, &state(&[1, 1], &[0, 0])).is_err());
    }

    #[test]
    fn normalization_examples() {
        let d = RationalField;
        let s = state(
            &[864, 288, 1008, 336, 0, 0, -144, -48],
            &[3, -1, 0, 0, 0, 0, 0, 0],
        );
        let (n, pd, qd) = normalize(&d, &s, Normalization::MaxAbs).unwrap();
        let r = |a, b| Rational::new(a, b).unwrap();
        assert_eq!(
            n.p.coeffs(),
            &[
                r(6, 7),
                r(2, 7),
                r(1, 1),
                r(1, 3),
                r(0, 1),
                r(0, 1),
                r(-1, 7),
                r(-1, 21)
            ]
        );
        assert_eq!((pd, qd), (Rational::from(1008), Rational::from(3)));

        let (n, _, qd) = normalize(&d, &state(&[1], &[3, -1]), Normalization::SumAbs).unwrap();
        assert_eq!(n.q.coeffs(), &[r(3, 4), r(-1, 4)]);
        assert_eq!(qd, Rational::from(4));

        let (n, pd, _) =
            normalize(&d, &state(&[48, 16, 24], &[1]), Normalization::Primitive).unwrap();
        assert_eq!(n.p, rp(&[6, 2, 3]));
        let rec_alpha = d.exact_divide(&d.one(), &pd).unwrap();
        assert_eq!(rec_alpha, r(1, 8));

        // zero polynomial is left alone
        let (n, _, qd) = normalize(&d, &state(&[1, 2], &[0, 0]), Normalization::MaxAbs).unwrap();
        assert!(n.q.is_zero(&d));
        assert_eq!(qd, d.one());
    }

    #[test]
    fn advance_degenerate_then_coprime() {
        let d = RationalField;
        let s = state(&[1, 1, 1], &[2, 1, 2]);
        match advance(&d, &s, Normalization::None).unwrap() {
            Advance::Step(rec) => {
                assert_eq!(rec.kind, StepKind::Degenerate);
                assert_eq!(rec.level_after, 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        let cert = run(
            &d,
            &rp(&[1, 1, 1]),
            &rp(&[2, 1, 2]),
            &RunConfig::new(Normalization::None),
        )
        .unwrap();
        assert!(cert.is_coprime());
        assert_eq!(cert.count(StepKind::Degenerate), 1);
        assert!(verify_certificate(&d, &cert, &rp(&[1, 1, 1]), &rp(&[2, 1, 2])).passed());
    }

    #[test]
    fn run_on_identical_inputs() {
        let d = RationalField;
        let p = rp(&[6, 4, 2]);
        let cert = run(&d, &p, &p, &RunConfig::default_for(&d)).unwrap();
        assert_eq!(cert.gcd, rp(&[3, 2, 1]));
        assert_eq!(cert.iteration_steps(), 1);
        assert!(verify_certificate(&d, &cert, &p, &p).passed());
    }

    #[test]
    fn run_rejects_two_zeros() {
        let d = RationalField;
        assert_eq!(
            run(&d, &rp(&[0]), &rp(&[0, 0]), &RunConfig::default_for(&d)),
            Err(EngineError::InvalidInput("both polynomials are zero"))
        );
    }

    #[test]
    fn x_power_and_zero_constant_swap() {
        let d = RationalField;
        // x^2(x+1)(x+2) and x(x+1)
        let p = rp(&[0, 0, 2, 3, 1]);
        let q = rp(&[0, 1, 1]);
        let cert = run(&d, &p, &q, &RunConfig::default_for(&d)).unwrap();
        assert_eq!(cert.x_power, 1);
        assert_eq!(cert.gcd, rp(&[1, 1]));
        assert_eq!(cert.trace[0].kind, StepKind::StripX);
        assert!(cert.trace.iter().any(|r| r.kind == StepKind::Swap));
        assert!(verify_certificate(&d, &cert, &p, &q).passed());
    }

    #[test]
    fn one_zero_input() {
        let d = RationalField;
        let q = rp(&[0, 2, 4]);
        let cert = run(&d, &rp(&[0]), &q, &RunConfig::default_for(&d)).unwrap();
        assert_eq!(cert.x_power, 1);
        assert_eq!(
            cert.full_gcd(&d).trimmed(&d),
            rp(&[0, 1, 2]).scale(&d, &Rational::new(1, 2).unwrap())
        );
        assert!(verify_certificate(&d, &cert, &rp(&[0]), &q).passed());
    }

    #[test]
    fn constants_are_coprime() {
        let d = RationalField;
        let cert = run(&d, &rp(&[5]), &rp(&[3]), &RunConfig::default_for(&d)).unwrap();
        assert!(cert.is_coprime());
        assert_eq!(cert.gcd, rp(&[1]));
        assert!(verify_certificate(&d, &cert, &rp(&[5]), &rp(&[3])).passed());
    }

    #[test]
    fn corrupted_gcd_fails_divisibility() {
        let d = RationalField;
        let (p, q) = (rp(&[1, 0, 1]), rp(&[2, 1]));
        let mut cert = run(&d, &p, &q, &RunConfig::default_for(&d)).unwrap();
        assert!(verify_certificate(&d, &cert, &p, &q).passed());
        cert.gcd = rp(&[1, 1]);
        let report = verify_certificate(&d, &cert, &p, &q);
        assert!(!report.passed());
        assert!(report.failures().any(|c| c.name == "gcd divides P"));
    }

    #[test]
    fn float_run_matches_rational() {
        let f = FloatDomain::default();
        let p = Polynomial::new(P8.iter().map(|&n| n as f64).collect());
        let q = Polynomial::new(Q8.iter().map(|&n| n as f64).collect());
        let cert = run(&f, &p, &q, &RunConfig::default_for(&f)).unwrap();
        let g = cert.gcd.trimmed(&f);
        let expected = [3.0, 1.0, 3.0, 1.0];
        assert_eq!(g.len(), 4);
        for (a, b) in g.coeffs().iter().zip(expected) {
            assert!((a - b).abs() < 1e-9, "{a} vs {b}");
        }
    }

    #[test]
    fn float_verification_is_refused() {
        let f = FloatDomain::default();
        let p = Polynomial::new(vec![1.0, 1.0]);
        let cert = run(&f, &p, &p, &RunConfig::default_for(&f)).unwrap();
        assert!(!verify_certificate(&f, &cert, &p, &p).passed());
    }

    #[test]
    fn unsupported_normalization() {
        let d = crate::domain::SymbolicDomain::new(["a"]);
        let p = Polynomial::new(vec![d.var("a"), d.one()]);
        let q = Polynomial::new(vec![d.one(), d.one()]);
        assert!(matches!(
            run(&d, &p, &q, &RunConfig::new(Normalization::MaxAbs)),
            Err(EngineError::Domain(DomainError::Unsupported(_)))
        ));
    }
}
