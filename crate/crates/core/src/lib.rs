//! Workbench for generalized Turán problems on posets in the Boolean lattice.
//!
//! The crate is organised bottom-up: [`lattice`] holds bit-mask families and
//! full-chain oracles, [`poset`] the finite posets and their catalog,
//! [`embedding`] weak-subposet search, [`constructions`] and [`formulas`] the
//! extremal families and their closed-form counts, [`search`] exact
//! `La(n, P, #Q)` computation, and [`proofcheck`] mechanical checks of the
//! counting arguments.

pub mod bignum;
pub mod constructions;
pub mod embedding;
pub mod error;
pub mod exec;
pub mod formulas;
pub mod lattice;
pub mod poset;
pub mod proofcheck;
pub mod search;

pub use error::{Error, Result};
pub use exec::Exec;
pub use lattice::{Mask, SetFamily};
pub use poset::{Poset, PosetFamily};
