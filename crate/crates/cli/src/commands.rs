//! One function per subcommand. Each fills the report and returns a
//! [`Failure`] only when no verdict could be reached.

use commdiff::codec::{
    chain_from_json, chain_to_json, curve_to_json, operator_to_json, point_from_json, AnyChain,
    AnyOperator, Json,
};
use commdiff::commutant::{
    find_commuting, find_commuting_on_window, verify_commute_tol, AnsatzRing, AnsatzSpec,
    CommutantSolution, SolverLimits,
};
use commdiff::families::{build_polynomial, trigonometric_l2, FamilyParams, FamilyTag};
use commdiff::ore::{commutator, DifferenceOperator, OreKind, OreOperator, A1, W1};
use commdiff::rings::{DifferenceRing, Field, Rational, Ring, WindowSeq};
use commdiff::spectral::{curve_from_pair, normalize_odd, CurveData, CurvePoint, DressingChain};
use commdiff::weyl::{aut_a1, aut_w1, make_pair, to_weyl, GeneratorPair};
use commdiff::Error;
use serde_json::{json, Value};

use crate::input::{a1_generators, inline_or_file, read_chain_json, read_json, read_operator, w1_generators};
use crate::report::{Failure, Report};

fn witness_text(op: &AnyOperator, w: &Value) -> String {
    let term = json!({
        "algebra": op.algebra(),
        "ring": op.ring(),
        "terms": [{ "power": w["power"], "coeff": w["coeff"] }],
    });
    AnyOperator::from_json(&term).map(|o| o.pretty()).unwrap_or_else(|_| w.to_string())
}

pub fn verify(a: &str, b: &str, tol: f64, rep: &mut Report) -> Result<(), Failure> {
    let x = read_operator(a, rep)?;
    let y = read_operator(b, rep)?;
    let (ok, witness) = x.verify_commute(&y, tol)?;
    let outcome = match (ok, x.is_exact()) {
        (true, true) => "zero",
        (true, false) => "within_tolerance",
        (false, _) => "nonzero",
    };
    let mut detail = json!({});
    if !x.is_exact() {
        detail["tolerance"] = json!(tol);
    }
    match &witness {
        Some(w) => {
            let text = witness_text(&x, w);
            rep.note(format!("[A, B] has leading term {text}"));
            detail["witness"] = w.clone();
            detail["witness_text"] = json!(text);
        }
        None => rep.note("[A, B] = 0"),
    }
    rep.verdict("commutator", ok, outcome, detail);
    rep.artifact("witness", witness.unwrap_or(Value::Null));
    Ok(())
}

pub struct CommutantArgs {
    pub order: usize,
    pub degree_bound: Option<usize>,
    pub frequency_bound: Option<i64>,
    pub monic: bool,
    pub max_unknowns: usize,
    pub window: Option<(i64, i64)>,
}

fn report_solution<R: DifferenceRing + Json>(
    l: &DifferenceOperator<R>,
    sol: CommutantSolution<R>,
    tol: f64,
    rep: &mut Report,
) {
    let check = |rep: &mut Report, x: &DifferenceOperator<R>, i: usize| {
        let ok = verify_commute_tol(l, x, tol).is_zero();
        rep.verdict("commutator", ok, if ok { "zero" } else { "nonzero" }, json!({ "member": i }));
    };
    match sol {
        CommutantSolution::Monic(x) => {
            check(rep, &x, 0);
            rep.note(format!("monic solution of order {}", x.top_power().unwrap_or(0)));
            rep.artifact("operator", operator_to_json(&x));
        }
        CommutantSolution::Basis(b) => {
            for (i, x) in b.basis.iter().enumerate() {
                check(rep, x, i);
            }
            rep.note(format!("commutant basis of dimension {}", b.dimension()));
            rep.artifact("basis", Value::Array(b.basis.iter().map(operator_to_json).collect()));
            rep.artifact("dimension", json!(b.dimension()));
            rep.artifact("degree_bound", json!(b.degree_bound));
            rep.artifact("frequency_bound", json!(b.frequency_bound));
        }
    }
}

fn exact_commutant<R: AnsatzRing + Json>(
    l: &DifferenceOperator<R>,
    args: &CommutantArgs,
    rep: &mut Report,
) -> Result<(), Failure> {
    let mut spec = AnsatzSpec::new(args.order);
    if let Some(d) = args.degree_bound {
        spec = spec.degree(d);
    }
    if let Some(f) = args.frequency_bound {
        spec = spec.frequency(f);
    }
    if args.monic {
        spec = spec.monic();
    }
    let limits = SolverLimits { max_unknowns: args.max_unknowns, ..SolverLimits::default() };
    let sol = find_commuting(l, &spec, &limits)?;
    report_solution(l, sol, 0.0, rep);
    Ok(())
}

fn window_commutant<K: Field + Json>(
    l: &DifferenceOperator<WindowSeq<K>>,
    args: &CommutantArgs,
    tol: f64,
    rep: &mut Report,
) -> Result<(), Failure> {
    let window = match args.window {
        Some(w) => w,
        None => {
            let ranges: Vec<(i64, i64)> = l.terms().values().filter_map(WindowSeq::range).collect();
            let lo = ranges.iter().map(|r| r.0).min();
            let hi = ranges.iter().map(|r| r.1).max();
            lo.zip(hi).ok_or_else(|| Failure::Input("no finite window; pass --window".into()))?
        }
    };
    let sol = find_commuting_on_window(l, args.order, window, args.monic, tol)?;
    report_solution(l, sol, tol, rep);
    Ok(())
}

pub fn commutant(path: &str, args: &CommutantArgs, tol: f64, rep: &mut Report) -> Result<(), Failure> {
    match read_operator(path, rep)? {
        AnyOperator::DiffPoly(l) => exact_commutant(&l, args, rep),
        AnyOperator::DiffExp(l) => exact_commutant(&l, args, rep),
        AnyOperator::DiffSeq(l) => window_commutant(&l, args, 0.0, rep),
        AnyOperator::DiffSeqF64(l) => window_commutant(&l, args, tol, rep),
        AnyOperator::Differential(_) => {
            Err(Failure::Input("the commutant solver takes difference operators; map to W1 first".into()))
        }
    }
}

fn curve_of<R, K>(l2: &OreOperator<R, K>, lodd: &OreOperator<R, K>, rep: &mut Report) -> Result<(), Failure>
where
    R: Ring + Json,
    R::Scalar: Json + std::fmt::Display,
    K: OreKind<R>,
{
    if !verify_commute_tol(l2, lodd, 0.0).is_zero() {
        rep.verdict("commutator", false, "nonzero", json!({}));
        rep.note("operators do not commute; no curve");
        return Ok(());
    }
    rep.verdict("commutator", true, "zero", json!({}));
    let x = normalize_odd(l2, lodd)?;
    match curve_from_pair(l2, &x) {
        Ok(c) => {
            rep.verdict("curve_residual", true, "zero", json!({}));
            rep.note(format!("w^2 = {}", c.polynomial().pretty("z")));
            rep.artifact("curve", curve_to_json(&c));
            rep.artifact("normalized_odd", operator_to_json(&x));
        }
        Err(e @ (Error::Residual(_) | Error::NonMonic(_))) => {
            rep.verdict("curve_residual", false, "nonzero", json!({ "message": e.to_string() }));
            rep.note(e.to_string());
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

pub fn curve(l2: &str, lodd: &str, rep: &mut Report) -> Result<(), Failure> {
    let a = read_operator(l2, rep)?;
    let b = read_operator(lodd, rep)?;
    use AnyOperator::*;
    match (&a, &b) {
        (DiffPoly(x), DiffPoly(y)) => curve_of(x, y, rep),
        (DiffExp(x), DiffExp(y)) => curve_of(x, y, rep),
        (DiffSeq(x), DiffSeq(y)) => curve_of(x, y, rep),
        (Differential(x), Differential(y)) => curve_of(x, y, rep),
        (DiffSeqF64(_), DiffSeqF64(_)) => Err(Failure::Input("curve extraction needs exact coefficients".into())),
        _ if a.algebra() != b.algebra() => Err(Error::AlgebraMismatch(a.algebra().into(), b.algebra().into()).into()),
        _ => Err(Error::RingMismatch(a.ring().into(), b.ring().into()).into()),
    }
}

pub struct FamilyArgs {
    pub family: String,
    pub genus: usize,
    pub r1: Rational,
    pub alpha0: Rational,
    pub alpha1: Rational,
    pub alpha2: Rational,
    pub curve: Option<Vec<Rational>>,
    pub gamma: Option<String>,
    pub window: Option<(i64, i64)>,
}

pub fn family(args: &FamilyArgs, rep: &mut Report) -> Result<(), Failure> {
    let tag = FamilyTag::parse(&args.family)?;
    let op = match tag {
        FamilyTag::Polynomial | FamilyTag::PolynomialA1 => {
            let mut p = FamilyParams::new(tag, args.genus);
            p.alpha0 = args.alpha0.clone();
            p.alpha1 = args.alpha1.clone();
            p.alpha2 = args.alpha2.clone();
            AnyOperator::DiffPoly(build_polynomial(&p)?)
        }
        FamilyTag::Trigonometric => AnyOperator::DiffExp(trigonometric_l2(args.genus, &args.r1)?),
        FamilyTag::Elliptic => return elliptic_family(args, rep),
    };
    rep.note(format!("{} family, g = {}", tag.name(), args.genus));
    rep.artifact("operator", op.to_json());
    Ok(())
}

fn elliptic_family(args: &FamilyArgs, rep: &mut Report) -> Result<(), Failure> {
    if args.genus != 1 {
        return Err(Failure::Input("the elliptic family is genus one".into()));
    }
    let curve = args.curve.as_ref().ok_or_else(|| Failure::Input("--curve c0,c1,c2 is required".into()))?;
    let path = args.gamma.as_ref().ok_or_else(|| Failure::Input("--gamma FILE is required".into()))?;
    let data = read_json(path, rep)?;
    let gamma = data.get("gamma").ok_or_else(|| Failure::Input(format!("{path}: missing \"gamma\"")))?;
    let sqrt_f = data.get("sqrtF").ok_or_else(|| Failure::Input(format!("{path}: missing \"sqrtF\"")))?;
    let len = gamma.as_array().map_or(0, Vec::len) as i64;
    let window = match args.window {
        Some((lo, hi)) if hi - lo + 1 != len => {
            return Err(Failure::Input(format!("window [{lo}, {hi}] does not match {len} gamma values")))
        }
        Some(w) => w,
        None => (0, len - 1),
    };
    let spec = json!({
        "genus": 1,
        "curve": curve.iter().map(Json::to_json).collect::<Vec<_>>(),
        "window": [window.0, window.1],
        "gamma": gamma,
        "sqrtF": sqrt_f,
    });
    let (op, chain) = match chain_from_json(&spec)? {
        AnyChain::Exact(c, ch) => (AnyOperator::DiffSeq(ch.l2_operator()), chain_to_json(&c, &ch)),
        AnyChain::Numeric(c, ch) => (AnyOperator::DiffSeqF64(ch.l2_operator()), chain_to_json(&c, &ch)),
    };
    rep.note(format!("elliptic family on window [{}, {}]", window.0, window.1));
    rep.artifact("operator", op.to_json());
    rep.artifact("chain", chain);
    Ok(())
}

fn check_chain<K: Field + Json>(
    curve: &CurveData<K>,
    chain: &DressingChain<K>,
    points: &[CurvePoint<K>],
    tol: Option<f64>,
    rep: &mut Report,
) -> Result<(), Failure>
where
    K: commdiff::rings::Embed<K>,
{
    let (lo, hi) = chain.window;
    let record = |rep: &mut Report, name: &str, c: commdiff::spectral::Check, extra: Value| {
        let ok = tol.map_or(c.holds, |t| c.within(t));
        let outcome = match (ok, tol.is_some()) {
            (true, false) => "zero",
            (true, true) => "within_tolerance",
            (false, _) => "nonzero",
        };
        let mut detail = json!({ "residual": c.residual });
        if let Value::Object(m) = extra {
            detail.as_object_mut().unwrap().extend(m);
        }
        rep.verdict(name, ok, outcome, detail);
    };
    for n in lo..hi {
        let c = chain.verify_eq2(curve, n)?;
        record(rep, "curve_identity", c, json!({ "n": n }));
    }
    for n in lo..hi - 1 {
        let c = chain.verify_corollary(n)?;
        record(rep, "stepping_identity", c, json!({ "n": n }));
    }
    for (i, p) in points.iter().enumerate() {
        for n in lo..hi - 1 {
            let c = chain.verify_factorization(n, p)?;
            record(rep, "factorization", c, json!({ "n": n, "point": i }));
        }
    }
    rep.note(format!("window [{lo}, {hi}], {} point(s)", points.len()));
    rep.artifact("chain", chain_to_json(curve, chain));
    rep.artifact("l2", operator_to_json(&chain.l2_operator()));
    if let Ok(odd) = chain.odd_operator(curve) {
        rep.artifact("odd", operator_to_json(&odd));
    }
    Ok(())
}

fn read_points<K: Field + Json>(v: &Value, curve: &CurveData<K>) -> Result<Vec<CurvePoint<K>>, Failure>
where
    K: commdiff::rings::Embed<K>,
{
    let list = v.as_array().ok_or_else(|| Failure::Input("points must be a JSON array".into()))?;
    list.iter()
        .map(|p| {
            let p: CurvePoint<K> = point_from_json(p)?;
            Ok(CurvePoint::on_curve(curve, p.z, p.w)?)
        })
        .collect()
}

pub fn chain(path: &str, points: Option<&str>, tol: f64, rep: &mut Report) -> Result<(), Failure> {
    let v = read_chain_json(path, rep)?;
    let pts = match points {
        Some(p) => Some(read_json(p, rep)?),
        None => v.get("points").cloned(),
    };
    match chain_from_json(&v)? {
        AnyChain::Exact(c, ch) => {
            let pts = pts.map(|p| read_points(&p, &c)).transpose()?.unwrap_or_default();
            check_chain(&c, &ch, &pts, None, rep)
        }
        AnyChain::Numeric(c, ch) => {
            let pts = pts.map(|p| read_points(&p, &c)).transpose()?.unwrap_or_default();
            check_chain(&c, &ch, &pts, Some(tol), rep)
        }
    }
}

fn read_pair(path: &str, rep: &mut Report) -> Result<GeneratorPair, Failure> {
    let v = read_json(path, rep)?;
    if let Some(gens) = v.get("generators").or(v.is_array().then_some(&v)) {
        return Ok(make_pair(&a1_generators(gens)?)?);
    }
    let part = |key: &str| -> Result<A1, Failure> {
        let op = v.get(key).ok_or_else(|| Failure::Input(format!("pair needs \"{key}\" or \"generators\"")))?;
        match AnyOperator::from_json(op)? {
            AnyOperator::Differential(a) => Ok(a),
            other => Err(Failure::Input(format!("pair entry {key} is a {} operator", other.algebra()))),
        }
    };
    Ok(GeneratorPair::new(part("a")?, part("b")?)?)
}

fn expect_w1(op: AnyOperator) -> Result<W1, Failure> {
    match op {
        AnyOperator::DiffPoly(l) => Ok(l),
        other => Err(Failure::Input(format!(
            "expected a difference operator over polynomials, got {} over {}",
            other.algebra(),
            other.ring()
        ))),
    }
}

pub fn weyl_map(path: &str, pair: Option<&str>, rep: &mut Report) -> Result<(), Failure> {
    let op = expect_w1(read_operator(path, rep)?)?;
    let pair = match pair {
        Some(p) => read_pair(p, rep)?,
        None => GeneratorPair::standard(),
    };
    rep.verdict("pair_invariant", commutator(pair.a(), pair.b()) == *pair.a(), "zero", json!({}));
    let img = to_weyl(&op, &pair)?;
    rep.note(format!("image: {img}"));
    rep.artifact("operator", operator_to_json(&img));
    Ok(())
}

pub fn automorph(path: &str, algebra: &str, generators: &str, rep: &mut Report) -> Result<(), Failure> {
    let op = read_operator(path, rep)?;
    let gens = inline_or_file(generators, rep)?;
    let img = match algebra {
        "w1" => {
            let mut x = expect_w1(op)?;
            let mut n = W1::var();
            for p in w1_generators(&gens)? {
                x = aut_w1(&x, &p)?;
                n = aut_w1(&n, &p)?;
            }
            let t = W1::generator();
            rep.verdict("relation [T, n] = T", commutator(&t, &n) == t, "zero", json!({}));
            operator_to_json(&x)
        }
        "a1" => {
            let AnyOperator::Differential(mut x) = op else {
                return Err(Failure::Input("--algebra a1 expects a differential operator".into()));
            };
            let (mut xi, mut di) = (A1::var(), A1::generator());
            for g in a1_generators(&gens)? {
                x = aut_a1(&x, &g)?;
                xi = aut_a1(&xi, &g)?;
                di = aut_a1(&di, &g)?;
            }
            rep.verdict("relation [D, x] = 1", commutator(&di, &xi) == A1::one(), "zero", json!({}));
            operator_to_json(&x)
        }
        other => return Err(Failure::Input(format!("unknown algebra {other:?}; use w1 or a1"))),
    };
    rep.artifact("operator", img);
    Ok(())
}
