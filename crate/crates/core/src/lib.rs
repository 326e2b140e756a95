//! Block structure of graphs and the quantum-isomorphism invariants built on it.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! * [`graph`]: simple graphs with stable vertex identities, exact adjacency
//!   algebra (walk counts, characteristic polynomials), distances and centres.
//! * [`blocks`]: block decomposition, block trees, block graphs and the
//!   anchor map from a graph to its block graph.
//! * [`anchored`]: anchored graphs, the decomposition `Γ`, the tree
//!   constructions `Δ₁`/`Δ₂` and rooted coloured tree canonical forms.
//! * [`walks`]: walk counts through a vertex and the concatenation identity.
//! * [`magic`]: magic unitaries with matrix coefficients, quantum isomorphism
//!   checks, partition sums and the transport `Γ(U)`.
//! * [`sieve`]: a sound refuter for quantum isomorphism with an evidence trail.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod anchored;
pub mod blocks;
mod error;
pub mod graph;
pub mod iso;
pub mod magic;
pub mod matching;
pub mod sieve;
pub mod walks;

pub use error::{Error, Result};
pub use graph::{Graph, IntMatrix, VertexId, VertexSet};
