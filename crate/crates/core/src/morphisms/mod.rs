//! Elliptic morphisms (F, G) with S·G² = F(F−1)(F−κ).

mod morphism;
mod search;

pub use morphism::{
    common_field, independence_rank, j_invariant, rank, verify_morphism, EllipticMorphism,
};
pub use search::{
    assignments, build_ideal, default_rank_hint, elliptic_factors, elliptic_factors_with,
    enumerate_partitions, morphism_from_solution, Ideal, PartitionSpec, SearchOptions, VarLayout,
};
