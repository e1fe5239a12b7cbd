//! A workbench for multiplicative Lie algebra structures on finite groups.
//!
//! A multiplicative Lie algebra is a group with a second operation `⋆`
//! subject to five axioms (see [`star`]). This crate validates the axioms
//! exhaustively on explicit Cayley tables, computes the derived and lower
//! central series and the two centers, enumerates all structures on small
//! groups by constrained backtracking (with independent oracles to check
//! the search), and constructs structures on group extensions from
//! `(sigma, gamma, f, h)` data with full verification of the compatibility
//! equations.

pub mod catalog;
pub mod extension;
pub mod families;
pub mod group;
pub mod identities;
pub mod io;
pub mod pairing;
pub mod search;
pub mod series;
pub mod star;
pub mod structure;

pub use group::{Elem, GroupError, GroupHom, GroupTable, Subset};
pub use star::{check_mla_axioms, lie_commutator, LieRing, Mla, StarTable, Violation};
