//! Finite Boolean semimodules as join-semilattices with bottom.

pub mod chi;
mod iso;
mod lattice;

pub use iso::{are_isomorphic, is_isomorphism, ISO_LIMIT};
pub use lattice::{
    cardinality_class, column_span_bool, distributivity_failure, extremal_columns_bool, idempotent_power, is_free_bool,
    is_projective, is_projective_with, k0_distinct_by_cardinality, q_chain, BoolSemimodule, K0Comparison, Violation,
};
