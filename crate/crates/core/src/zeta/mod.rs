//! Curves, point counts, zeta numerators and rank bounds.

mod count;
mod curve;
mod psi;
mod rank;

pub use count::{
    count_points, count_points_with_budget, count_reduced, field_modulus, is_good_prime,
    reduce_mod, ReducedCurve, DEFAULT_COUNT_BUDGET,
};
pub use curve::{normalize_curve, HyperellipticCurve, NormalizationRecord};
pub use psi::{counts_from_psi, psi_from_counts, psi_power, ZetaPsi};
pub use rank::{
    admissible_exponents, best_rank_bound, odd_primes_up_to, rank_bound, rank_bound_from_psi,
    rank_bound_with_budget, small_factor_count, totient, zeta_psi, RankBound,
};
