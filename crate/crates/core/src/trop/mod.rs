//! Finitely generated subsemimodules of `T^n` over the max-plus semifield.

mod free;
mod span;

pub use free::{
    is_free_trop, is_free_trop_with, verify_witness, CollapseWitness, Freeness, FreenessOptions, DEFAULT_PROBE_DEPTH,
    PROBE_GRID_LIMIT,
};
pub use span::{
    combine, extremal_generators, extremal_indices, is_weakly_independent, principal_solution, trop_membership,
    weak_dimension, TropSpan, TropVector,
};
