//! Spectral data of commuting pairs: the hyperelliptic curve of a pair, and
//! the genus-one dressing chain with its Baker–Akhiezer function.

mod chain;
mod curve;

pub use chain::{chain_from_gamma_g1, Check, DressingChain, CHAIN_TOL};
pub use curve::{curve_from_pair, normalize_odd, CurveData, CurvePoint};
