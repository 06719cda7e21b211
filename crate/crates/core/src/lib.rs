//! Algebraic entropy of finite self-maps of local rings.
//!
//! The crate computes the length sequence λ(φⁿ) = ℓ(R/φⁿ(m)R) for an
//! endomorphism φ of a local ring R = k[x₁..x_d]_(x)/a, together with the
//! entropy h(φ) = lim log λ(φⁿ)/n and a family of derived invariants.

pub mod budget;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod field;
pub mod groebner;
pub mod local;
pub mod modular;
pub mod parser;
pub mod poly;
pub mod problem;
pub mod staircase;
pub mod verify;

pub use budget::Budget;
pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use parser::{parse_polynomial, ParseError};
pub use poly::{Monomial, MonomialOrder, Polynomial, VariableContext};
