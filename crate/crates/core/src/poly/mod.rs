//! Univariate and multivariate polynomials and their factorization.

pub mod factor_ff;
pub mod factor_nf;
pub mod factor_q;
mod multi;
pub mod pfrac;
mod ratfunc;
pub mod split;
mod uni;

pub use factor_ff::{factor_ff, is_irreducible_ff};
pub use factor_nf::{factor_nf, is_irreducible_nf};
pub use factor_q::{factor_q, is_irreducible_q};
pub use multi::{Monomial, MonomialOrder, MultiPoly};
pub use pfrac::{partial_fractions, PartialFractionForm, PartialFractionTerm};
pub use ratfunc::RationalFunction;
pub use split::splitting_field;
pub use uni::UniPoly;
