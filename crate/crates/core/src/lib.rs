//! Blowup Ramsey computations, copy-hypergraph analysis, the two-stage
//! anti-`K_3[2]` recolouring, and unavoidable colour patterns.
//!
//! Colour `0` is red and colour `1` is blue throughout.

pub mod arrowing;
pub mod biclique;
pub mod blowup;
pub mod canonical;
pub mod colouring;
pub mod copies;
pub mod error;
pub mod format;
pub mod generators;
pub mod graph;
pub mod hypergraph;
pub mod recolour;
pub mod rng;
pub mod search;
pub mod trees;
pub mod unavoidable;

pub use arrowing::{arrows, blowup_ramsey_number, is_ramsey_minimal, ArrowingResult, BlowupRamseyQuery};
pub use blowup::{blowup, lift_colouring, BlownGraph, BlowupSpec};
pub use canonical::{find_mono_canonical, CanonicalWitness};
pub use colouring::{EdgeColouring, PartialColouring, BLUE, RED};
pub use copies::{enumerate_copies, CopyEmbedding};
pub use error::{Error, Result};
pub use graph::Graph;
pub use hypergraph::{build_copy_hypergraph, girth, is_3_chromatically_connected, CopyHypergraph, Girth};
pub use search::SearchConfig;
pub use unavoidable::ColouredClique;
