//! JSON encoding of numbers, coefficient rings, operators, curves and chains.
//!
//! Rationals are strings `"p/q"` (or `"p"`); Gaussian rationals `"a+bi"`;
//! polynomials ascending coefficient lists; `ℚ(i)(E)` elements
//! `{"num": [...], "den": [...]}`; exponential polynomials
//! `[{"freq": f, "poly": [...]}]`; window sequences `{"start", "values"}` or
//! `{"const"}`. Operators are
//! `{"algebra", "ring", "terms": [{"power", "coeff"}]}` with terms sorted by
//! power.

use serde_json::{json, Map, Value};

use crate::commutant::{verify_commute_tol, Verdict};
use crate::error::{Error, Result};
use crate::ore::{DifferenceOperator, OreKind, OreOperator, A1, W1};
use crate::rings::{ExpPoly, Field, GaussianRational, Poly, Rational, RationalFunctionE, Ring, WindowSeq};
use crate::spectral::{chain_from_gamma_g1, CurveData, CurvePoint, DressingChain};

pub trait Json: Sized {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

impl Json for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            Value::Number(n) => n
                .as_i64()
                .map(Rational::from)
                .ok_or_else(|| Error::parse(format!("{n} is not an exact number; use a \"p/q\" string"))),
            _ => Err(Error::parse(format!("expected a rational, got {v}"))),
        }
    }
}

impl Json for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| Error::parse(format!("bad number {n}"))),
            Value::String(s) => Ok(s.parse::<Rational>()?.to_f64()),
            _ => Err(Error::parse(format!("expected a number, got {v}"))),
        }
    }
}

impl Json for GaussianRational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::String(s) => s.parse(),
            _ => Ok(GaussianRational::real(Rational::from_json(v)?)),
        }
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::parse(format!("{what} must be an array")))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::parse(format!("missing field {key:?}")))
}

fn int(v: &Value, what: &str) -> Result<i64> {
    v.as_i64().ok_or_else(|| Error::parse(format!("{what} must be an integer")))
}

pub fn list_from_json<T: Json>(v: &Value, what: &str) -> Result<Vec<T>> {
    array(v, what)?.iter().map(T::from_json).collect()
}

pub fn list_to_json<T: Json>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(Json::to_json).collect())
}

impl<K: Field + Json> Json for Poly<K> {
    fn to_json(&self) -> Value {
        list_to_json(self.coeffs())
    }

    fn from_json(v: &Value) -> Result<Self> {
        Ok(Poly::new(list_from_json(v, "polynomial")?))
    }
}

impl Json for RationalFunctionE {
    fn to_json(&self) -> Value {
        json!({ "num": self.numer().to_json(), "den": self.denom().to_json() })
    }

    fn from_json(v: &Value) -> Result<Self> {
        if !v.is_object() {
            return Ok(RationalFunctionE::constant(GaussianRational::from_json(v)?));
        }
        let num = Poly::from_json(field(v, "num")?)?;
        let den = match v.get("den") {
            Some(d) => Poly::from_json(d)?,
            None => Poly::constant(GaussianRational::one()),
        };
        RationalFunctionE::new(num, den).ok_or_else(|| Error::parse("zero denominator"))
    }
}

impl Json for ExpPoly {
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .iter()
                .map(|(f, p)| json!({ "freq": f, "poly": p.to_json() }))
                .collect(),
        )
    }

    fn from_json(v: &Value) -> Result<Self> {
        let mut terms = Vec::new();
        for t in array(v, "exponential polynomial")? {
            terms.push((int(field(t, "freq")?, "freq")?, Poly::from_json(field(t, "poly")?)?));
        }
        Ok(ExpPoly::from_terms(terms))
    }
}

impl<K: Field + Json> Json for WindowSeq<K> {
    fn to_json(&self) -> Value {
        match self {
            WindowSeq::Const(c) => json!({ "const": c.to_json() }),
            WindowSeq::Window { start, values } => json!({ "start": start, "values": list_to_json(values) }),
        }
    }

    fn from_json(v: &Value) -> Result<Self> {
        if let Some(c) = v.get("const") {
            return Ok(WindowSeq::Const(K::from_json(c)?));
        }
        let start = int(field(v, "start")?, "start")?;
        Ok(WindowSeq::new(start, list_from_json(field(v, "values")?, "values")?))
    }
}

pub fn operator_to_json<R: Ring + Json, K: OreKind<R>>(op: &OreOperator<R, K>) -> Value {
    let terms: Vec<Value> = op
        .terms()
        .iter()
        .map(|(p, c)| json!({ "power": p, "coeff": c.to_json() }))
        .collect();
    json!({ "algebra": K::ALGEBRA, "ring": R::ring_name(), "terms": terms })
}

fn terms_from_json<R: Ring + Json>(v: &Value) -> Result<Vec<(i64, R)>> {
    array(field(v, "terms")?, "terms")?
        .iter()
        .map(|t| Ok((int(field(t, "power")?, "power")?, R::from_json(field(t, "coeff")?)?)))
        .collect()
}

fn tag<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    field(v, key)?.as_str().ok_or_else(|| Error::parse(format!("{key} must be a string")))
}

/// An operator whose algebra and coefficient ring are known only at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyOperator {
    DiffPoly(W1),
    DiffExp(DifferenceOperator<ExpPoly>),
    DiffSeq(DifferenceOperator<WindowSeq<Rational>>),
    DiffSeqF64(DifferenceOperator<WindowSeq<f64>>),
    Differential(A1),
}

impl AnyOperator {
    pub fn algebra(&self) -> &'static str {
        match self {
            AnyOperator::Differential(_) => "differential",
            _ => "difference",
        }
    }

    pub fn ring(&self) -> &'static str {
        match self {
            AnyOperator::DiffPoly(_) | AnyOperator::Differential(_) => "poly",
            AnyOperator::DiffExp(_) => "exp_poly",
            AnyOperator::DiffSeq(_) => "sequence",
            AnyOperator::DiffSeqF64(_) => "sequence_f64",
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, AnyOperator::DiffSeqF64(_))
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyOperator::DiffPoly(o) => operator_to_json(o),
            AnyOperator::DiffExp(o) => operator_to_json(o),
            AnyOperator::DiffSeq(o) => operator_to_json(o),
            AnyOperator::DiffSeqF64(o) => operator_to_json(o),
            AnyOperator::Differential(o) => operator_to_json(o),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let algebra = tag(v, "algebra")?;
        let ring = tag(v, "ring")?;
        Ok(match (algebra, ring) {
            ("difference", "poly") => AnyOperator::DiffPoly(OreOperator::from_terms(terms_from_json(v)?)),
            ("difference", "exp_poly") => AnyOperator::DiffExp(OreOperator::from_terms(terms_from_json(v)?)),
            ("difference", "sequence") => AnyOperator::DiffSeq(OreOperator::from_terms(terms_from_json(v)?)),
            ("difference", "sequence_f64") => AnyOperator::DiffSeqF64(OreOperator::from_terms(terms_from_json(v)?)),
            ("differential", "poly") => AnyOperator::Differential(OreOperator::from_terms(terms_from_json(v)?)),
            ("differential", "exp_poly" | "sequence" | "sequence_f64") => return Err(Error::NoDerivation),
            ("difference" | "differential", other) => return Err(Error::parse(format!("unknown ring {other:?}"))),
            (other, _) => return Err(Error::parse(format!("unknown algebra {other:?}"))),
        })
    }

    /// Commutator check; the witness is the JSON of the highest nonzero term.
    pub fn verify_commute(&self, other: &Self, tol: f64) -> Result<(bool, Option<Value>)> {
        fn report<R: Ring + Json>(v: Verdict<R>, sym: &str) -> (bool, Option<Value>) {
            match v {
                Verdict::Zero => (true, None),
                Verdict::Nonzero { power, coeff } => {
                    (false, Some(json!({ "power": power, "coeff": coeff.to_json(), "symbol": sym })))
                }
            }
        }
        use AnyOperator::*;
        Ok(match (self, other) {
            (DiffPoly(a), DiffPoly(b)) => report(verify_commute_tol(a, b, 0.0), "T"),
            (DiffExp(a), DiffExp(b)) => report(verify_commute_tol(a, b, 0.0), "T"),
            (DiffSeq(a), DiffSeq(b)) => report(verify_commute_tol(a, b, 0.0), "T"),
            (DiffSeqF64(a), DiffSeqF64(b)) => report(verify_commute_tol(a, b, tol), "T"),
            (Differential(a), Differential(b)) => report(verify_commute_tol(a, b, 0.0), "D"),
            _ if self.algebra() != other.algebra() => {
                return Err(Error::AlgebraMismatch(self.algebra().into(), other.algebra().into()))
            }
            _ => return Err(Error::RingMismatch(self.ring().into(), other.ring().into())),
        })
    }

    /// Plain-text rendering for human-readable summaries.
    pub fn pretty(&self) -> String {
        match self {
            AnyOperator::DiffPoly(o) => o.to_string(),
            AnyOperator::Differential(o) => o.to_string(),
            AnyOperator::DiffExp(o) => o.pretty_with(|c| c.to_string()),
            AnyOperator::DiffSeq(o) => o.pretty_with(|c| format!("{c:?}")),
            AnyOperator::DiffSeqF64(o) => o.pretty_with(|c| format!("{c:?}")),
        }
    }
}

pub fn curve_to_json<K: Field + Json + std::fmt::Display>(c: &CurveData<K>) -> Value {
    json!({
        "genus": c.genus,
        "coeffs": list_to_json(&c.coeffs),
        "polynomial": c.polynomial().pretty("z"),
    })
}

pub fn curve_from_json<K: Field + Json>(v: &Value) -> Result<CurveData<K>> {
    let coeffs: Vec<K> = list_from_json(field(v, "coeffs")?, "coeffs")?;
    let genus = match v.get("genus") {
        Some(g) => int(g, "genus")? as usize,
        None => coeffs.len().saturating_sub(1) / 2,
    };
    CurveData::new(genus, coeffs)
}

pub fn point_to_json<V: Json>(p: &CurvePoint<V>) -> Value {
    json!({ "z": p.z.to_json(), "w": p.w.to_json() })
}

pub fn point_from_json<V: Json + Field>(v: &Value) -> Result<CurvePoint<V>> {
    Ok(CurvePoint::new(V::from_json(field(v, "z")?)?, V::from_json(field(v, "w")?)?))
}

/// A chain with exact or floating-point values.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyChain {
    Exact(CurveData<Rational>, DressingChain<Rational>),
    Numeric(CurveData<f64>, DressingChain<f64>),
}

fn has_float(v: &Value) -> bool {
    match v {
        Value::Number(n) => !n.is_i64(),
        Value::Array(xs) => xs.iter().any(has_float),
        Value::Object(m) => m.values().any(has_float),
        _ => false,
    }
}

/// Parse `{"genus", "curve", "window", "gamma", "sqrtF"}`; explicit
/// `S`, `Q`, `U`, `W` fields (any genus) take precedence over the
/// genus-one construction. Any non-integer JSON number selects numeric mode.
pub fn chain_from_json(v: &Value) -> Result<AnyChain> {
    if has_float(v) {
        let (c, ch) = chain_from_json_in::<f64>(v)?;
        Ok(AnyChain::Numeric(c, ch))
    } else {
        let (c, ch) = chain_from_json_in::<Rational>(v)?;
        Ok(AnyChain::Exact(c, ch))
    }
}

fn chain_from_json_in<K: Field + Json>(v: &Value) -> Result<(CurveData<K>, DressingChain<K>)> {
    let genus = int(field(v, "genus")?, "genus")? as usize;
    let curve = CurveData::new(genus, list_from_json(field(v, "curve")?, "curve")?)?;
    let window = array(field(v, "window")?, "window")?;
    let [lo, hi] = window.as_slice() else {
        return Err(Error::parse("window must be [lo, hi]"));
    };
    let (lo, hi) = (int(lo, "window")?, int(hi, "window")?);
    let gamma: Option<Vec<K>> = v.get("gamma").map(|g| list_from_json(g, "gamma")).transpose()?;
    if let Some(g) = &gamma {
        if g.len() as i64 != hi - lo + 1 {
            return Err(Error::parse("gamma length must equal the window size"));
        }
    }
    let chain = if v.get("S").is_some() {
        let polys = |key: &str| -> Result<Vec<Poly<K>>> {
            array(field(v, key)?, key)?.iter().map(Poly::from_json).collect()
        };
        DressingChain::from_parts(
            genus,
            (lo, hi),
            gamma,
            list_from_json(field(v, "U")?, "U")?,
            list_from_json(field(v, "W")?, "W")?,
            polys("S")?,
            polys("Q")?,
        )?
    } else {
        let gamma = gamma.ok_or_else(|| Error::parse("missing field \"gamma\""))?;
        let sqrt_f: Vec<K> = list_from_json(field(v, "sqrtF")?, "sqrtF")?;
        chain_from_gamma_g1(&curve, lo, &gamma, &sqrt_f)?
    };
    Ok((curve, chain))
}

pub fn chain_to_json<K: Field + Json>(curve: &CurveData<K>, chain: &DressingChain<K>) -> Value {
    let mut m = Map::new();
    m.insert("genus".into(), json!(chain.genus));
    m.insert("curve".into(), list_to_json(&curve.coeffs));
    m.insert("window".into(), json!([chain.window.0, chain.window.1]));
    if let Some(g) = &chain.gamma {
        m.insert("gamma".into(), list_to_json(g));
    }
    m.insert("U".into(), list_to_json(&chain.u));
    m.insert("W".into(), list_to_json(&chain.w));
    m.insert("S".into(), Value::Array(chain.s.iter().map(Json::to_json).collect()));
    m.insert("Q".into(), Value::Array(chain.q.iter().map(Json::to_json).collect()));
    Value::Object(m)
}
