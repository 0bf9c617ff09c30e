//! Exact combinatorial kernel for strong shift equivalence of non-negative
//! integer matrices and for the directed multigraphs they present.
//!
//! Everything here is deterministic and exact: matrix entries are `u64`
//! with checked arithmetic (overflow is an error, never a wrap), graphs keep
//! their vertices and edges in declaration order, and every derived object
//! (inflation graphs, ideal lattices, corner maps) comes out in a canonical
//! order so that two runs over the same input are byte-identical.
//!
//! The crate is `no_std` (with `alloc`); file formats, reports and the
//! command line live in the companion `shifteq` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod corners;
pub mod graph;
pub mod ideals;
pub mod matrix;
pub mod sse;

#[cfg(test)]
pub(crate) mod testdata;

pub use corners::{
    CornerDecomposition, CornerMap, CorrespondenceProfile, MoritaVerdict, Verdict,
};
pub use graph::{Edge, Graph, GraphAnalysis, GraphError};
pub use ideals::{IdealError, IdealLattice};
pub use matrix::{Matrix, MatrixError};
pub use sse::{
    ElementaryPair, Mismatch, PairCheck, ProductSide, SearchConfig, SearchOutcome, SseChain,
    SseError,
};
