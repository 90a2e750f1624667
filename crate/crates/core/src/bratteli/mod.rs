//! Matricial and ultramatricial algebras through their Bratteli
//! presentations: ordered `SK0` groups, realisation of unital embeddings,
//! and a three-valued isomorphism decision.

mod iso;
mod presentation;
mod realize;

pub use iso::{
    eventual_rank, iso_ultramatricial, supernatural_of, verify_witness, IntertwiningWitness, IsoOptions, IsoVerdict,
    NotIsoCertificate, Supernatural, DEFAULT_ISO_DEPTH,
};
pub use presentation::{
    congsemisimple_invariant, congsemisimple_isomorphic, sk0_matricial, sk0_ultramatricial, BratteliPresentation,
    FieldTag, MatricialAlgebra,
};
pub use realize::{realize_morphism, BlockPlacement, EmbeddingPlan};
