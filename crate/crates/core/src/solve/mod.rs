//! Gröbner bases and zero-dimensional solving over number fields.

pub mod groebner;
pub mod zerodim;

pub use groebner::{
    groebner, groebner_with_budget, is_zero_dimensional, normal_form, GroebnerBudget,
};
pub use zerodim::{solve_in_field, solve_zero_dim, SolutionPoint, SolveOptions};
