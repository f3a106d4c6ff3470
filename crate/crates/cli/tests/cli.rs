use std::process::{Command, Output};

use serde_json::Value;

const PLANTED_P: &str = "x^8-4x^6+4x^5-29x^4+20x^3+24x^2+16x+48";
const PLANTED_Q: &str = "x^8+3x^7-7x^4-21x^3-6x^2-18x";
const COPRIME_P: &str = "x^8+x^6-3x^4-3x^3+8x^2+2x-5";
const COPRIME_Q: &str = "3x^6+5x^4-4x^2-9x+21";

fn polygcd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polygcd"))
        .args(args)
        .env_remove("POLYGCD_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = polygcd(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    serde_json::from_str(&ok(&all)).expect("valid JSON")
}

fn code(args: &[&str]) -> Option<i32> {
    polygcd(args).status.code()
}

fn rational(s: &str) -> (i128, i128) {
    match s.split_once('/') {
        Some((n, d)) => (n.parse().unwrap(), d.parse().unwrap()),
        None => (s.parse().unwrap(), 1),
    }
}

/// Coefficient lists (exact strings) are scalar multiples of each other.
fn proportional(a: &[Value], b: &[(i128, i128)]) -> bool {
    let a: Vec<(i128, i128)> = a.iter().map(|v| rational(v.as_str().unwrap())).collect();
    a.len() == b.len()
        && (0..a.len()).all(|i| {
            (0..a.len()).all(|j| {
                let (ai, aj, bi, bj) = (a[i], a[j], b[i], b[j]);
                ai.0 * bj.0 * aj.1 * bi.1 == aj.0 * bi.0 * ai.1 * bj.1
            })
        })
}

#[test]
fn gcd_planted_pair() {
    assert_eq!(
        ok(&["gcd", PLANTED_P, PLANTED_Q]),
        "x^3 + 3x^2 + x + 3\nx_power: 0\n"
    );
}

#[test]
fn gcd_identical_linear() {
    assert!(ok(&["gcd", "x+1", "x+1"]).starts_with("x + 1\n"));
}

#[test]
fn gcd_of_zeros_is_invalid_input() {
    assert_eq!(code(&["gcd", "0", "0"]), Some(2));
}

#[test]
fn gcd_reports_x_power() {
    assert_eq!(ok(&["gcd", "x^3+x^2", "x^2"]), "x^2\nx_power: 2\n");
}

#[test]
fn text_and_json_report_the_same_gcd() {
    for (p, q) in [
        (PLANTED_P, PLANTED_Q),
        (COPRIME_P, COPRIME_Q),
        ("x^3+x^2", "x^2+x"),
    ] {
        let text = ok(&["gcd", p, q]);
        let v = json(&["gcd", p, q]);
        assert_eq!(text.lines().next().unwrap(), v["gcd"].as_str().unwrap());
    }
}

#[test]
fn gcd_json_schema() {
    let v = json(&["gcd", COPRIME_P, COPRIME_Q]);
    assert_eq!(v["gcd"], "1");
    assert_eq!(v["x_power"], 0);
    assert_eq!(v["coprime"], true);
    assert!(v["steps"].as_u64().unwrap() > 0);
    assert!(v["terminal_constant"].is_string());
    let v = json(&["gcd", PLANTED_P, PLANTED_Q]);
    assert_eq!(v["coprime"], false);
    assert!(v.get("terminal_constant").is_none());
}

#[test]
fn bezout_coprime_pair_verifies() {
    let out = ok(&["bezout", COPRIME_P, COPRIME_Q]);
    assert!(out.contains("identity: s·P + t·Q = 1\n"), "{out}");
    assert!(out.contains("verification: pass"), "{out}");
    let v = json(&["bezout", COPRIME_P, COPRIME_Q]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["identity"]["body"], "1");
    assert_eq!(v["identity"]["shift"], 0);
}

#[test]
fn bezout_identical_inputs() {
    let v = json(&["bezout", "x^2+1", "x^2+1"]);
    assert_eq!(v["s"]["body"], "1");
    assert_eq!(v["t"]["body"], "0");
    assert_eq!(v["verified"], true);
}

#[test]
fn bezout_planted_pair_gives_gcd_times_power_of_x() {
    let v = json(&["bezout", PLANTED_P, PLANTED_Q]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["identity"]["body"], "x^3 + 3x^2 + x + 3");
}

#[test]
fn bezout_symbolic_verifies_with_scale() {
    let v = json(&["bezout", "--mode", "symbolic", "a*x^3+b*x+c", "3a*x^2+b"]);
    assert_eq!(v["verified"], true);
    assert_eq!(v["gcd"], "1");
}

#[test]
fn bezout_rejects_float_mode() {
    assert_eq!(code(&["bezout", "--mode", "float", "x+1", "x-1"]), Some(1));
}

#[test]
fn disc_symbolic_cubic() {
    let v = json(&["disc", "--mode", "symbolic", "a*x^3+b*x+c"]);
    let rem = v["remainder"].as_str().unwrap();
    assert!(
        rem == "27*a*c^2 + 4*b^3" || rem == "-27*a*c^2 - 4*b^3",
        "{rem}"
    );
}

#[test]
fn disc_symbolic_quintic_trinomial() {
    let v = json(&["disc", "--mode", "symbolic", "x^5+a*x+b"]);
    let rem = v["remainder"].as_str().unwrap();
    assert!(
        rem == "256*a^5 + 3125*b^4" || rem == "-256*a^5 - 3125*b^4",
        "{rem}"
    );
}

#[test]
fn disc_rational_reports_oracle() {
    let v = json(&["disc", "x^2+3x+2"]);
    assert_eq!(v["oracle_discriminant"], "1");
    assert_eq!(v["coprime"], true);
    let out = ok(&["disc", "x^2+2x+1"]);
    assert!(out.contains("coprime with derivative: no"), "{out}");
    assert!(out.contains("oracle discriminant: 0"), "{out}");
}

#[test]
fn disc_rejects_float_mode() {
    assert_eq!(code(&["disc", "--mode", "float", "x^2+1"]), Some(1));
}

#[test]
fn trace_schema_and_exact_strings() {
    let v = json(&["trace", PLANTED_P, PLANTED_Q]);
    let steps = v["steps"].as_array().unwrap();
    assert!(!steps.is_empty());
    for s in steps {
        for key in ["kind", "level_after", "delta", "alpha", "beta", "p", "q"] {
            assert!(s.get(key).is_some(), "missing {key} in {s}");
        }
        assert!(s["p"].as_array().unwrap().iter().all(Value::is_string));
        assert!(s["delta"].is_string());
    }
    assert_eq!(steps.last().unwrap()["kind"], "Terminal");
    assert_eq!(v["result"]["gcd"], "x^3 + 3x^2 + x + 3");
}

#[test]
fn trace_first_stage_matches_printed_pair() {
    let v = json(&["trace", "--normalize", "max", PLANTED_P, PLANTED_Q]);
    let first = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["kind"] == "Reduce")
        .unwrap()
        .clone();
    let p7 = [
        (6, 7),
        (2, 7),
        (1, 1),
        (1, 3),
        (0, 1),
        (0, 1),
        (-1, 7),
        (-1, 21),
    ];
    let q7 = [
        (1, 1),
        (17, 24),
        (5, 8),
        (41, 48),
        (-11, 24),
        (1, 12),
        (-1, 12),
        (-1, 16),
    ];
    assert!(
        proportional(first["p"].as_array().unwrap(), &p7),
        "{}",
        first["p"]
    );
    assert!(
        proportional(first["q"].as_array().unwrap(), &q7),
        "{}",
        first["q"]
    );
}

#[test]
fn trace_without_normalization_grows() {
    let v = json(&["trace", "--normalize", "none", COPRIME_P, COPRIME_Q]);
    let big = v["steps"].as_array().unwrap().iter().take(5).any(|s| {
        s["p"]
            .as_array()
            .unwrap()
            .iter()
            .chain(s["q"].as_array().unwrap())
            .any(|c| {
                let (n, d) = rational(c.as_str().unwrap());
                (n / d).abs() >= 1_000_000_000_000
            })
    });
    assert!(big);
}

#[test]
fn trace_float_mode_uses_numbers() {
    let v = json(&["trace", "--mode", "float", "x^2-1", "x-1"]);
    let steps = v["steps"].as_array().unwrap();
    assert!(steps
        .iter()
        .all(|s| s["p"].as_array().unwrap().iter().all(Value::is_number)));
    assert_eq!(v["result"]["gcd"], "x - 1");
}

#[test]
fn resultant_oracles() {
    assert_eq!(ok(&["resultant", "x^2-1", "x-2"]), "resultant: 3\n");
    let v = json(&["resultant", "x^2-1", "x-1"]);
    assert_eq!(v["resultant"], "0");
    let v = json(&["resultant", "--oracle", "engine", "x^2-1", "x-2"]);
    assert_eq!(v["oracle"], "engine");
    assert_eq!(v["coprime"], true);
    let v = json(&["resultant", "--mode", "symbolic", "x-a", "x-b"]);
    let r = v["resultant"].as_str().unwrap();
    assert!(r == "a - b" || r == "-a + b", "{r}");
}

#[test]
fn parse_and_usage_errors_exit_1() {
    assert_eq!(code(&["gcd", "x+", "x"]), Some(1));
    assert_eq!(code(&["gcd", "x"]), Some(1));
    assert_eq!(code(&["frobnicate", "x", "x"]), Some(1));
    assert_eq!(
        code(&["gcd", "--mode", "symbolic", "--tol", "1e-9", "x", "x"]),
        Some(1)
    );
    assert_eq!(code(&["gcd", "--params", "a", "x", "x"]), Some(1));
    assert_eq!(
        code(&["gcd", "--mode", "float", "--tol", "-1", "x", "x"]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "gcd",
            "--normalize",
            "max",
            "--mode",
            "symbolic",
            "a*x^2+1",
            "x+1"
        ]),
        Some(1)
    );
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn leading_minus_is_an_expression() {
    assert_eq!(ok(&["gcd", "-x+1", "x^2-1"]), "x - 1\nx_power: 0\n");
}

#[test]
fn custom_variable_and_params() {
    let out = ok(&["gcd", "--var", "t", "t^2-1", "t+1"]);
    assert_eq!(out, "t + 1\nx_power: 0\n");
    let v = json(&[
        "gcd", "--mode", "symbolic", "--params", "k", "x^2+k*x", "x+k",
    ]);
    assert_eq!(v["gcd"], "x + k");
}

#[test]
fn float_tolerance_failure_exits_3() {
    // delta = 1e-11 sits inside the ambiguity band above the 1e-12 tolerance.
    assert_eq!(
        code(&["gcd", "--mode", "float", "x+1", "x+1.00000000001"]),
        Some(3)
    );
    let out = Command::new(env!("CARGO_BIN_EXE_polygcd"))
        .args(["gcd", "--mode", "float", "x+1", "x+1.00000000001"])
        .env("POLYGCD_TOL", "1e-9")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("x + 1"));
}

#[test]
fn malformed_tolerance_env_is_usage_error() {
    let out = Command::new(env!("CARGO_BIN_EXE_polygcd"))
        .args(["gcd", "--mode", "float", "x+1", "x"])
        .env("POLYGCD_TOL", "tiny")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
