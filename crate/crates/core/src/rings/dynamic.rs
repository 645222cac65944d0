use super::{DifferenceRing, DifferentialRing, ExpPoly, Poly, Rational, Ring, WindowSeq};
use crate::error::{Error, Result};

/// Coefficient whose ring is only known at run time (CLI and JSON input).
#[derive(Clone, Debug, PartialEq)]
pub enum AnyCoefficient {
    Poly(Poly<Rational>),
    ExpPoly(ExpPoly),
    Sequence(WindowSeq<Rational>),
    SequenceF64(WindowSeq<f64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

impl AnyCoefficient {
    pub fn ring_name(&self) -> &'static str {
        match self {
            AnyCoefficient::Poly(_) => Poly::<Rational>::ring_name(),
            AnyCoefficient::ExpPoly(_) => ExpPoly::ring_name(),
            AnyCoefficient::Sequence(_) => WindowSeq::<Rational>::ring_name(),
            AnyCoefficient::SequenceF64(_) => WindowSeq::<f64>::ring_name(),
        }
    }
}

fn apply<R: Ring>(a: &R, b: &R, op: RingOp) -> R {
    match op {
        RingOp::Add => a.clone() + b.clone(),
        RingOp::Sub => a.clone() - b.clone(),
        RingOp::Mul => a.clone() * b.clone(),
    }
}

pub fn ring_arith(a: &AnyCoefficient, b: &AnyCoefficient, op: RingOp) -> Result<AnyCoefficient> {
    use AnyCoefficient::*;
    Ok(match (a, b) {
        (Poly(x), Poly(y)) => Poly(apply(x, y, op)),
        (ExpPoly(x), ExpPoly(y)) => ExpPoly(apply(x, y, op)),
        (Sequence(x), Sequence(y)) => Sequence(apply(x, y, op)),
        (SequenceF64(x), SequenceF64(y)) => SequenceF64(apply(x, y, op)),
        _ => return Err(Error::RingMismatch(a.ring_name().into(), b.ring_name().into())),
    })
}

pub fn shift(a: &AnyCoefficient, k: i64) -> AnyCoefficient {
    use AnyCoefficient::*;
    match a {
        Poly(x) => Poly(x.shift(k)),
        ExpPoly(x) => ExpPoly(x.shift(k)),
        Sequence(x) => Sequence(x.shift(k)),
        SequenceF64(x) => SequenceF64(x.shift(k)),
    }
}

/// Formal derivative; only polynomial coefficients carry a derivation.
pub fn derive(a: &AnyCoefficient) -> Result<AnyCoefficient> {
    match a {
        AnyCoefficient::Poly(x) => Ok(AnyCoefficient::Poly(x.derive())),
        _ => Err(Error::NoDerivation),
    }
}
