//! Exact decomposition and collision counting for additive polynomials over
//! finite fields.

pub mod census;
pub mod construct;
pub mod error;
pub mod frobenius;
pub mod gf;
pub mod ore;
pub mod par;
pub mod poly;
pub mod text;

pub use error::{Error, Result};
pub use gf::{make_field, FieldCtx, FieldElement};
pub use ore::{AdditivePoly, CentralPoly, OreRing};
pub use poly::{BaseField, DensePoly, PolyRing, SecondDegree};
