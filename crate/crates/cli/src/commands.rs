use std::fmt::{self, Write as _};

use polygcd::parse::is_identifier;
use polygcd::{
    discriminant, format_poly, laurent_combine, parse_poly, run, sylvester_resultant,
    verify_certificate, EngineError, FloatDomain, GcdCertificate, LaurentPolynomial, Normalization,
    ParseTarget, PolySource, Polynomial, RationalField, RunConfig, StepRecord, SymbolicDomain,
};
use serde_json::{json, Map, Value};

/// Failure of a command, mapped onto the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Unparseable input, bad flags, unsupported mode (exit 1).
    Usage(String),
    /// Both inputs are zero (exit 2).
    InvalidInput(String),
    /// A float zero test could not be decided (exit 3).
    Tolerance(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::InvalidInput(_) => 2,
            CliError::Tolerance(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::InvalidInput(m) | CliError::Tolerance(m) => {
                f.write_str(m)
            }
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::InvalidInput(_) => CliError::InvalidInput(e.to_string()),
            EngineError::ToleranceFailure { .. } => CliError::Tolerance(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

/// Rendered output of a command in both formats.
pub struct Report {
    pub text: String,
    pub json: Value,
}

/// Mode-specific behavior on top of parsing and printing.
pub trait CliDomain: ParseTarget {
    /// A coefficient as JSON: exact values become strings, floats numbers.
    fn elem_json(&self, e: &Self::Elem) -> Value {
        Value::String(e.to_string())
    }

    /// Extra `disc` fields: (key, text, JSON).
    fn disc_extras(
        &self,
        p: &Polynomial<Self::Elem>,
        terminal_constant: Option<&Self::Elem>,
    ) -> Result<Vec<(&'static str, String, Value)>, CliError>;
}

impl CliDomain for RationalField {
    fn disc_extras(
        &self,
        p: &Polynomial<Self::Elem>,
        _terminal_constant: Option<&Self::Elem>,
    ) -> Result<Vec<(&'static str, String, Value)>, CliError> {
        let disc = discriminant(self, p)?;
        Ok(vec![(
            "oracle_discriminant",
            disc.to_string(),
            self.elem_json(&disc),
        )])
    }
}

impl CliDomain for FloatDomain {
    fn elem_json(&self, e: &f64) -> Value {
        json!(e)
    }

    fn disc_extras(
        &self,
        _p: &Polynomial<f64>,
        _terminal_constant: Option<&f64>,
    ) -> Result<Vec<(&'static str, String, Value)>, CliError> {
        Err(CliError::Usage(
            "disc needs rational or symbolic mode".into(),
        ))
    }
}

impl CliDomain for SymbolicDomain {
    fn disc_extras(
        &self,
        _p: &Polynomial<Self::Elem>,
        terminal_constant: Option<&Self::Elem>,
    ) -> Result<Vec<(&'static str, String, Value)>, CliError> {
        let Some(c) = terminal_constant else {
            return Ok(Vec::new());
        };
        let (content, rest) = c.monomial_content().map_err(EngineError::from)?;
        let content = content.to_multipoly(self.params());
        Ok(vec![
            ("content", content.to_string(), self.elem_json(&content)),
            ("remainder", rest.to_string(), self.elem_json(&rest)),
        ])
    }
}

/// Parameter names used by `inputs`: every letter outside the main
/// variable, or whole identifiers when they carry digits.
pub fn infer_params(inputs: &[&str], var: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut add = |name: String| {
        if name != var && !out.contains(&name) {
            out.push(name);
        }
    };
    for text in inputs {
        let mut chars = text.char_indices().peekable();
        while let Some((start, c)) = chars.next() {
            if !c.is_ascii_alphabetic() {
                continue;
            }
            let mut end = start + c.len_utf8();
            while let Some(&(i, n)) = chars.peek() {
                if !n.is_ascii_alphanumeric() {
                    break;
                }
                end = i + n.len_utf8();
                chars.next();
            }
            let id = &text[start..end];
            if id == var {
                continue;
            }
            if id.chars().any(|c| c.is_ascii_digit()) {
                add(id.to_string());
            } else {
                id.chars().map(String::from).for_each(&mut add);
            }
        }
    }
    out.sort();
    out
}

pub fn symbolic_domain(params: Vec<String>, var: &str) -> Result<SymbolicDomain, CliError> {
    for (i, p) in params.iter().enumerate() {
        if !is_identifier(p) {
            return Err(CliError::Usage(format!("invalid parameter name {p:?}")));
        }
        if p == var {
            return Err(CliError::Usage(format!(
                "parameter {p:?} is the main variable"
            )));
        }
        if params[..i].contains(p) {
            return Err(CliError::Usage(format!("parameter {p:?} listed twice")));
        }
    }
    Ok(SymbolicDomain::new(params))
}

type Pair<E> = (Polynomial<E>, Polynomial<E>);

/// Shared state of one command invocation.
pub struct Ctx<'a, D> {
    dom: &'a D,
    var: &'a str,
    strategy: Normalization,
}

impl<'a, D: CliDomain> Ctx<'a, D> {
    pub fn new(dom: &'a D, var: &'a str, strategy: Option<Normalization>) -> Self {
        Ctx {
            dom,
            var,
            strategy: strategy.unwrap_or_else(|| Normalization::default_for(dom)),
        }
    }

    fn parse(&self, label: &str, text: &str) -> Result<Polynomial<D::Elem>, CliError> {
        let src = PolySource::new(text)
            .with_var(self.var)
            .with_params(self.dom.parameters().to_vec());
        parse_poly(&src, self.dom)
            .map_err(|e| CliError::Usage(format!("cannot parse {label}: {e}")))
    }

    fn parse_pair(&self, p: &str, q: &str) -> Result<Pair<D::Elem>, CliError> {
        Ok((self.parse("P", p)?, self.parse("Q", q)?))
    }

    fn run(
        &self,
        p: &Polynomial<D::Elem>,
        q: &Polynomial<D::Elem>,
    ) -> Result<GcdCertificate<D::Elem>, CliError> {
        Ok(run(self.dom, p, q, &RunConfig::new(self.strategy))?)
    }

    fn show(&self, p: &Polynomial<D::Elem>) -> String {
        format_poly(self.dom, p, self.var)
    }

    fn show_laurent(&self, l: &LaurentPolynomial<D::Elem>) -> String {
        let body = self.show(l.body());
        match l.shift() {
            0 => body,
            k => format!("({body}) {}^-{k}", self.var),
        }
    }

    fn laurent_json(&self, l: &LaurentPolynomial<D::Elem>) -> Value {
        json!({ "body": self.show(l.body()), "shift": l.shift() })
    }

    fn coeffs_json(&self, p: &Polynomial<D::Elem>) -> Value {
        Value::Array(p.coeffs().iter().map(|c| self.dom.elem_json(c)).collect())
    }

    fn opt_json(&self, e: Option<D::Elem>) -> Value {
        e.map_or(Value::Null, |e| self.dom.elem_json(&e))
    }

    /// The fields shared by `gcd` JSON and the `trace` result.
    fn summary(&self, cert: &GcdCertificate<D::Elem>) -> Map<String, Value> {
        let full = cert.full_gcd(self.dom);
        let mut m = Map::new();
        m.insert("gcd".into(), json!(self.show(&full)));
        m.insert("x_power".into(), json!(cert.x_power));
        m.insert("coprime".into(), json!(full.degree(self.dom) == Some(0)));
        m.insert("steps".into(), json!(cert.iteration_steps()));
        if let Some(c) = &cert.terminal_constant {
            m.insert("terminal_constant".into(), self.dom.elem_json(c));
        }
        m
    }

    fn gcd_text(&self, cert: &GcdCertificate<D::Elem>) -> String {
        format!(
            "{}\nx_power: {}\n",
            self.show(&cert.full_gcd(self.dom)),
            cert.x_power
        )
    }

    pub fn gcd(&self, p: &str, q: &str) -> Result<Report, CliError> {
        let (p, q) = self.parse_pair(p, q)?;
        let cert = self.run(&p, &q)?;
        Ok(Report {
            text: self.gcd_text(&cert),
            json: Value::Object(self.summary(&cert)),
        })
    }

    pub fn bezout(&self, p: &str, q: &str) -> Result<Report, CliError> {
        if !self.dom.is_exact() {
            return Err(CliError::Usage(
                "bezout needs an exact mode (rational or symbolic)".into(),
            ));
        }
        let (p, q) = self.parse_pair(p, q)?;
        let cert = self.run(&p, &q)?;
        let value = laurent_combine(self.dom, &cert.s, &cert.t, &p, &q);
        let report = verify_certificate(self.dom, &cert, &p, &q);
        let failures: Vec<String> = report
            .failures()
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect();
        let mut text = String::new();
        let _ = writeln!(text, "s: {}", self.show_laurent(&cert.s));
        let _ = writeln!(text, "t: {}", self.show_laurent(&cert.t));
        if !self.dom.is_one(&cert.scale) {
            let _ = writeln!(text, "scale: {}", cert.scale);
        }
        let _ = writeln!(text, "identity: s·P + t·Q = {}", self.show_laurent(&value));
        let _ = writeln!(text, "gcd: {}", self.show(&cert.full_gcd(self.dom)));
        match failures.is_empty() {
            true => text.push_str("verification: pass\n"),
            false => {
                let _ = writeln!(text, "verification: FAIL ({})", failures.join("; "));
            }
        }
        let json = json!({
            "s": self.laurent_json(&cert.s),
            "t": self.laurent_json(&cert.t),
            "scale": self.dom.elem_json(&cert.scale),
            "identity": self.laurent_json(&value),
            "gcd": self.show(&cert.full_gcd(self.dom)),
            "x_power": cert.x_power,
            "verified": failures.is_empty(),
            "failures": failures,
        });
        Ok(Report { text, json })
    }

    pub fn disc(&self, p: &str) -> Result<Report, CliError> {
        let p = self.parse("P", p)?;
        let dp = p.derivative(self.dom);
        // Reject unsupported modes before doing any work.
        if !self.dom.is_exact() {
            self.dom.disc_extras(&p, None)?;
        }
        let cert = self.run(&p, &dp)?;
        let extras = self.dom.disc_extras(&p, cert.terminal_constant.as_ref())?;
        let full = cert.full_gcd(self.dom);
        let coprime = full.degree(self.dom) == Some(0);
        let mut text = String::new();
        let _ = writeln!(text, "derivative: {}", self.show(&dp));
        let _ = writeln!(
            text,
            "coprime with derivative: {}",
            if coprime { "yes" } else { "no" }
        );
        if let Some(c) = &cert.terminal_constant {
            let _ = writeln!(text, "terminal constant: {c}");
        } else {
            let _ = writeln!(text, "gcd with derivative: {}", self.show(&full));
        }
        let mut json = Map::new();
        json.insert("derivative".into(), json!(self.show(&dp)));
        json.insert("coprime".into(), json!(coprime));
        json.insert("gcd".into(), json!(self.show(&full)));
        json.insert(
            "terminal_constant".into(),
            self.opt_json(cert.terminal_constant.clone()),
        );
        for (key, shown, value) in extras {
            let _ = writeln!(text, "{}: {shown}", key.replace('_', " "));
            json.insert(key.into(), value);
        }
        Ok(Report {
            text,
            json: Value::Object(json),
        })
    }

    fn step_json(&self, rec: &StepRecord<D::Elem>) -> Value {
        json!({
            "kind": rec.kind.name(),
            "level_after": rec.level_after,
            "delta": self.dom.elem_json(&rec.delta),
            "alpha": self.opt_json(rec.alpha(self.dom)),
            "beta": self.opt_json(rec.beta(self.dom)),
            "p_divisor": self.dom.elem_json(&rec.p_divisor),
            "q_divisor": self.dom.elem_json(&rec.q_divisor),
            "p": self.coeffs_json(&rec.state.p),
            "q": self.coeffs_json(&rec.state.q),
        })
    }

    pub fn trace(&self, p: &str, q: &str) -> Result<Report, CliError> {
        let (p, q) = self.parse_pair(p, q)?;
        let cert = self.run(&p, &q)?;
        let mut text = String::new();
        let _ = writeln!(
            text,
            "start: level {}\n  P: {}\n  Q: {}",
            cert.start.level,
            self.show(&cert.start.p),
            self.show(&cert.start.q)
        );
        for (i, rec) in cert.trace.iter().enumerate() {
            let _ = writeln!(
                text,
                "#{} {} -> level {}  delta = {}\n  P: {}\n  Q: {}",
                i + 1,
                rec.kind.name(),
                rec.level_after,
                rec.delta,
                self.show(&rec.state.p),
                self.show(&rec.state.q)
            );
        }
        text.push_str(&self.gcd_text(&cert));
        let json = json!({
            "start": {
                "level": cert.start.level,
                "p": self.coeffs_json(&cert.start.p),
                "q": self.coeffs_json(&cert.start.q),
            },
            "steps": cert.trace.iter().map(|r| self.step_json(r)).collect::<Vec<_>>(),
            "result": Value::Object(self.summary(&cert)),
        });
        Ok(Report { text, json })
    }

    pub fn resultant_sylvester(&self, p: &str, q: &str) -> Result<Report, CliError> {
        let (p, q) = self.parse_pair(p, q)?;
        let res = sylvester_resultant(self.dom, &p, &q)?;
        Ok(Report {
            text: format!("resultant: {res}\n"),
            json: json!({ "oracle": "sylvester", "resultant": self.dom.elem_json(&res) }),
        })
    }

    /// The engine only decides coprimality; its terminal constant matches
    /// the resultant up to a factor accumulated along the run.
    pub fn resultant_engine(&self, p: &str, q: &str) -> Result<Report, CliError> {
        let (p, q) = self.parse_pair(p, q)?;
        let cert = self.run(&p, &q)?;
        let coprime = cert.full_gcd(self.dom).degree(self.dom) == Some(0);
        let mut text = format!("coprime: {}\n", if coprime { "yes" } else { "no" });
        match (&cert.terminal_constant, coprime) {
            (Some(c), true) => {
                let _ = writeln!(text, "terminal constant (resultant up to a factor): {c}");
            }
            _ => text.push_str("resultant: 0\n"),
        }
        let json = json!({
            "oracle": "engine",
            "coprime": coprime,
            "terminal_constant": self.opt_json(cert.terminal_constant.clone()),
        });
        Ok(Report { text, json })
    }
}
