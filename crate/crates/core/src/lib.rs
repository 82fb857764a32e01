//! Exact reduction of hyperelliptic integrals to elliptic integrals.

pub mod arith;
pub mod error;
pub mod integrate;
pub mod morphisms;
pub mod poly;
pub mod solve;
pub mod text;
pub mod zeta;

pub use arith::{
    CharZero, ExtField, Field, FiniteField, Fp, Fq, NfElem, NumberField, NumberFieldTower, Rational,
};
pub use error::{Error, Result, Stage};
pub use poly::{MonomialOrder, MultiPoly, UniPoly};
