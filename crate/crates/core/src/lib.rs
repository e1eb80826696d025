//! Exact computation of the Galois correspondence for group-type partial
//! actions of finite groupoids on split commutative rings.
//!
//! The pipeline, bottom-up:
//!
//! * [`field`] — exact coefficient fields (ℚ, ℚ(√d), GF(p^m)) with their
//!   automorphisms and subfields, over the prime-field [`scalar`]s;
//! * [`linalg`] — Gaussian elimination over ℚ or GF(p);
//! * [`groupoid`] — finite groupoids as composition tables;
//! * [`ring`] — split rings `S = ⊕ K·e_i`, twisted block subrings and
//!   separability;
//! * [`action`] — partial actions as twisted partial bijections of
//!   idempotents, validation and group-type detection;
//! * [`invariants`] — invariant subrings and fixer sets;
//! * [`galois`] — Galois coordinates, α-strong subrings, the class of
//!   admissible subrings and the certified correspondence table;
//! * [`dsl`] — the `.gpd` text format, emitters, and the builtin examples.
//!
//! Data-parallel loops run through [`exec::Exec`]; see the `parallel` feature.

pub mod action;
pub mod dsl;
pub mod error;
pub mod exec;
pub mod field;
pub mod galois;
pub mod groupoid;
pub mod invariants;
pub mod linalg;
pub mod report;
pub mod ring;
pub mod scalar;
pub mod separability;

pub use error::{Error, Result};
pub use exec::Exec;
