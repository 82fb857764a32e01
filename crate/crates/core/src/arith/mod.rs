//! Exact coefficient domains.

pub mod ext;
pub mod field;
pub mod numfield;
pub mod prime;
pub mod rational;

pub use ext::{ExtField, Fq};
pub use field::{CharZero, Field, FiniteField};
pub use numfield::{NfElem, NumberField, NumberFieldElement, NumberFieldTower, PrimitiveElement};
pub use prime::{is_prime, Fp};
pub use rational::Rational;
