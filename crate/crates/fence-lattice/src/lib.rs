//! Fence posets, their circular and gate relatives, and the combinatorics of
//! their ideal lattices: cardinality-preserving bijections between ideals and
//! filters, exact rank sequences with shape classification, chain
//! decompositions, and rowmotion dynamics.
//!
//! The `examples/` directory of this crate is the best starting point; each
//! example exercises one capability end to end. A thin `fence-lattice` binary
//! exposes the same operations as subcommands.

pub mod bijection;
pub mod chains;
pub mod composition;
pub mod encoding;
pub mod error;
pub mod poset;
pub mod rank;
pub mod rowmotion;

pub use composition::{compositions, Composition};
pub use error::{Error, Result};
pub use poset::{
    AlphaDeltaParams, CircularFencePoset, ElementSet, FencePoset, GatePoset, Poset, Segment,
};
pub use rank::RankSequence;
