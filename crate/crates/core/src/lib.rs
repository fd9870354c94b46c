//! Exact q-characters for the quantum affine algebra of type C3.
//!
//! The crate covers the root datum ([`cartan`]), Laurent monomials in the
//! variables `Y_{i,s}` ([`monomial`]), the character ring and its `sl2`
//! engine ([`qchar`]), the Frenkel-Mukhin algorithm with truncation
//! certificates ([`fm`]), the extended T-systems ([`tsystem`]) and
//! restrictions to `U_q(g)` ([`restriction`]).

pub mod cartan;
pub mod error;
pub mod fm;
pub mod monomial;
pub mod qchar;
pub mod restriction;
pub mod tsystem;

pub use error::{Error, Result};
pub use monomial::LMonomial;
pub use qchar::QCharacter;
