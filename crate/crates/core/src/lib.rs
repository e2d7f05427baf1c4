//! Generalized Cayley graphs over finite groups, their perfect codes and
//! total perfect codes, and brute-force oracles for every characterization.

pub mod automorphism;
pub mod census;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod gencayley;
pub mod group;
pub mod oracle;
pub mod set;
pub mod subgroup;
pub mod subgroup_codes;
pub mod verify;

pub use automorphism::{AlphaContext, AlphaRef, Automorphism};
pub use codes::{CodeKind, CodeMode};
pub use error::{Error, Result};
pub use gencayley::{GenCayleyGraph, GenCayleySubset};
pub use group::{FiniteGroup, GroupRef, GroupSpec};
pub use set::ElemSet;
pub use subgroup::{Side, Subgroup};
pub use subgroup_codes::{CodeWitness, Verdict};
