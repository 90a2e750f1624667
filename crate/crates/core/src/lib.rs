//! Exact, desk-scale computations for semiring K-theory.
//!
//! The crate is organised by the kind of object it manipulates:
//!
//! * [`semiring`]: scalar kernels (Boolean, tropical max-plus, natural numbers,
//!   finite Cayley tables) and matrices over them.
//! * [`bmod`]: finite Boolean semimodules, i.e. finite join-semilattices with
//!   bottom, together with the cardinality invariant used for `K0(B)`.
//! * [`trop`]: finitely generated subsemimodules of `T^n`.
//! * [`kflow`]: simplicial pre-ordered groups with order unit and their
//!   direct limits.
//! * [`bratteli`]: matricial and ultramatricial algebras as Bratteli
//!   presentations, their `SK0` invariants and the isomorphism decision.
//! * [`lab`]: raw finite semirings given by operation tables, congruences and
//!   the classification of congruence-semisimple semirings.
//! * [`io`]: the JSON file formats shared with the command-line front end.
//!
//! Every computation is exact. Search-heavy kernels run on rayon when the
//! `parallel` feature is enabled (the default) and always pick the canonical
//! first candidate, so results do not depend on the thread schedule.

#![allow(clippy::needless_range_loop)]

pub mod bmod;
pub mod bratteli;
pub mod error;
pub mod io;
pub mod kflow;
pub mod lab;
pub mod par;
pub mod semiring;
pub mod trop;

pub use error::{Error, Result};
pub use par::Exec;
