//! Reading JSON inputs from files or standard input.

use std::io::Read;

use commdiff::codec::{list_from_json, AnyOperator, Json};
use commdiff::rings::{Poly, Rational};
use commdiff::weyl::A1Automorphism;
use serde_json::Value;

use crate::report::{Failure, Report};

fn input_err(what: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Input(format!("{what}: {e}"))
}

/// Contents of `path`, or of standard input when `path` is `-`.
pub fn read_source(path: &str, report: &mut Report) -> Result<String, Failure> {
    let text = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| input_err("stdin", e))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| input_err(path, e))?
    };
    report.input(text.as_bytes());
    Ok(text)
}

pub fn read_json(path: &str, report: &mut Report) -> Result<Value, Failure> {
    let text = read_source(path, report)?;
    serde_json::from_str(&text).map_err(|e| input_err(path, format!("malformed JSON: {e}")))
}

/// A run report piped from another subcommand stands for its primary
/// artifact under `key`.
fn unwrap_report<'a>(v: &'a Value, key: &str) -> &'a Value {
    v.get("artifacts").and_then(|a| a.get(key)).unwrap_or(v)
}

pub fn read_operator(path: &str, report: &mut Report) -> Result<AnyOperator, Failure> {
    let v = read_json(path, report)?;
    AnyOperator::from_json(unwrap_report(&v, "operator")).map_err(|e| input_err(path, e))
}

pub fn read_chain_json(path: &str, report: &mut Report) -> Result<Value, Failure> {
    let v = read_json(path, report)?;
    Ok(unwrap_report(&v, "chain").clone())
}

/// `--generators` accepts inline JSON or a path to a JSON file.
pub fn inline_or_file(arg: &str, report: &mut Report) -> Result<Value, Failure> {
    match serde_json::from_str(arg) {
        Ok(v) => {
            report.input(arg.as_bytes());
            Ok(v)
        }
        Err(_) => read_json(arg, report),
    }
}

fn poly(v: &Value) -> Result<Poly<Rational>, Failure> {
    Poly::from_json(v).map_err(|e| input_err("generator", e))
}

/// `[{"shift": [p0, p1, ...]}]`: `n ↦ n + P(T)` for each entry in turn.
pub fn w1_generators(v: &Value) -> Result<Vec<Poly<Rational>>, Failure> {
    let list = v.as_array().ok_or_else(|| Failure::Input("generators must be a JSON array".into()))?;
    list.iter()
        .map(|g| match g.get("shift") {
            Some(p) => poly(p),
            None => Err(Failure::Input(format!("unknown W1 generator {g}; expected {{\"shift\": [...]}}"))),
        })
        .collect()
}

/// Entries `{"linear": [α, β, γ, δ]}`, `{"shift_x": [...]}` or
/// `{"shift_d": [...]}`.
pub fn a1_generators(v: &Value) -> Result<Vec<A1Automorphism>, Failure> {
    let list = v.as_array().ok_or_else(|| Failure::Input("generators must be a JSON array".into()))?;
    list.iter()
        .map(|g| {
            if let Some(m) = g.get("linear") {
                let c: Vec<Rational> = list_from_json(m, "linear").map_err(|e| input_err("generator", e))?;
                let [alpha, beta, gamma, delta] = <[Rational; 4]>::try_from(c)
                    .map_err(|_| Failure::Input("linear generator needs four entries".into()))?;
                Ok(A1Automorphism::Linear { alpha, beta, gamma, delta })
            } else if let Some(p) = g.get("shift_x") {
                Ok(A1Automorphism::ShiftX(poly(p)?))
            } else if let Some(p) = g.get("shift_d") {
                Ok(A1Automorphism::ShiftD(poly(p)?))
            } else {
                Err(Failure::Input(format!("unknown A1 generator {g}")))
            }
        })
        .collect()
}
