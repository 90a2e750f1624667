//! Finite semirings given by Cayley tables: axioms, congruences of right
//! semimodules, congruence-semisimple decompositions and their
//! classification as products of matrix semirings over `B` and finite fields.

mod classify;
mod congruence;
mod decompose;
mod table;

pub use classify::{
    analyze_table, classify_factors, classify_factors_with, find_isomorphism, is_isomorphism, product_table, Factor,
    SemiringReport,
};
pub use congruence::{
    is_congruence_simple, is_congruence_simple_with, semimodule_congruences, CongruencePartition, SemimoduleCarrier,
    DEFAULT_CONGRUENCE_LIMIT, SIMPLICITY_LIMIT,
};
pub use decompose::{
    congruence_semisimple_decompose, congruence_semisimple_decompose_with, evaluation_is_bijective,
    is_primitive_idempotent, primitive_orthogonal_units, primitive_orthogonal_units_with, sums_to_one, Decomposition,
    LabOptions, DEFAULT_ORDER_LIMIT,
};
pub use table::{FiniteSemiringTable, TableViolation, MAX_TABLE_ORDER};
