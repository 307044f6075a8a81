//! Finite groups, (semi)minimal Cayley graphs and their colorings.
//!
//! The crate builds groups from a small spec language (`cyclic:8`,
//! `sdp:7,3,2`, `dicyclic:32`, ...), turns generating sets into Cayley and
//! Schreier graphs, and provides exact solvers for clique and chromatic
//! numbers. On top of that sit the constructive 3-colorings for Dedekind,
//! generalized dihedral and nilpotent groups, and verifiers/searchers for the
//! "no lonely color" and "one popular color" edge-coloring properties.

pub mod bitset;
pub mod chromatic;
pub mod cli;
pub mod constructive;
pub mod error;
pub mod genset;
pub mod graph;
pub mod group;
pub mod popular;
pub mod repro;

pub use error::{Error, Result};
pub use graph::{EdgeColoring, Graph};
pub use group::{make_group, Elem, FiniteGroup, Subgroup};
