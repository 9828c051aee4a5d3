//! Dual-axis structural representation of small organic molecules.
//!
//! Two complementary axes describe a molecule built from H, C, N, O and F:
//!
//! * a *local* axis: hierarchical atom-centred valence codes ([`gcn`]) that
//!   capture the 0-, 1- and 2-hop heavy-atom neighbourhood of every atom,
//!   together with exact enumeration and big-integer counting of the code
//!   spaces;
//! * a *topological* axis: bridge-free ring/cage units ([`nbg`]) obtained by
//!   cut-vertex/bridge decomposition, canonicalised so that isomorphic units
//!   share one signature, plus a recursive generator of such units.
//!
//! On top of both axes sit dataset analytics ([`coverage`]), scalar
//! descriptors ([`descriptors`]) and cross-dataset linear alignment
//! ([`align`]).
//!
//! The crate is `no_std` and only needs `alloc`. File formats, ingestion and
//! the command-line tool live in the `molcode` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod align;
pub mod canon;
pub mod coverage;
pub mod descriptors;
pub mod gcn;
pub mod molgraph;
pub mod multiset;
pub mod nbg;

pub use molgraph::{Bond, Element, HeavyGraph, MolError, MolGraph};
