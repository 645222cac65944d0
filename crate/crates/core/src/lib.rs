//! Exact arithmetic for commuting pairs of difference operators: commutant
//! search, hyperelliptic spectral curves w² = F(z), genus-one dressing
//! chains, and the map into the first Weyl algebra given by `T ↦ x`,
//! `n ↦ −x∂ₓ`.

pub mod codec;
pub mod commutant;
pub mod error;
pub mod families;
pub mod linalg;
pub mod ore;
pub mod rings;
pub mod spectral;
pub mod weyl;

pub use error::{Error, Result};
