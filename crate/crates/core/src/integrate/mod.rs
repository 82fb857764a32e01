//! Reduction of ∫P/(Q√S) dx to elliptic integrals along morphisms, and the
//! exact derivative used to check every answer.

mod curvefn;
mod divisor;
mod expr;
mod hermite;
mod pipeline;
mod xpoly;

pub use curvefn::{log_ratio_derivative, CurveFunction, HyperellipticIntegrand};
pub use divisor::{
    elliptic_divisors, first_kind_coefficients, proportional_mod, reduce_divisor,
    riemann_roch_basis, total_degree, BasisMonomial, DivisorReduction, EllipticDivisors,
};
pub use expr::{
    descend, differentiate, term_derivative, trace_rf, EllipticExpression, EllipticTerm, RootSum,
    TermGroup, SCHEMA_VERSION,
};
pub use hermite::{
    check_simple_poles, hermite_reduce, second_kind_rank, solve_linear, working_field,
};
pub use pipeline::{hyperelliptic_to_elliptic, hyperelliptic_to_elliptic_with, IntegrateOptions};
