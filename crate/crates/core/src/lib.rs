//! Abelian maps on finite groups and the regular subgroups, skew braces and
//! Yang–Baxter solutions they produce.

pub mod brace;
pub mod error;
pub mod group;
pub mod maps;
pub mod oracle;
pub mod perm;
pub mod regular;
pub mod report;
pub mod typing;
pub mod ybe;

#[cfg(test)]
mod testutil;

pub use brace::SkewBrace;
pub use error::{Error, Result};
pub use group::{build_group, find_isomorphism, iso_fingerprint, FiniteGroup, GroupMap, Subgroup};
pub use maps::{enumerate_abelian_maps, AbelianMap};
pub use perm::{GroupPermutation, PermSubgroup};
pub use ybe::{PairMap, YbeSolution};
