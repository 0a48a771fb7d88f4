//! Binary codes with restricted overlaps.
//!
//! A code of length `n` is `(t1, t2)`-overlap-free when no `t`-prefix of a
//! codeword equals a `t`-suffix of a (possibly identical) codeword for any
//! `t1 <= t <= t2`. This crate builds such codes from prefix/suffix systems,
//! verifies them, searches the bipartite overlap graph for optimal systems,
//! and evaluates the counting identities and size bounds that go with them.
//!
//! Module map:
//!
//! * [`word`]: packed binary words and the overlap predicate.
//! * [`codecheck`]: codes, prefix/suffix systems, verification, and the
//!   brute-force maximum-code oracle.
//! * [`overlapgraph`]: the graph `G_k` and its exact searches.
//! * [`construct`]: the doubling, m-minimum, zero-block and
//!   Gilbert–Levenshtein constructions.
//! * [`counting`]: n-step Fibonacci numbers, run counts, and bounds.
//! * [`tables`]: reproduction of the published result tables.

mod bitset;
pub mod codecheck;
pub mod construct;
pub mod counting;
mod error;
mod mis;
pub mod overlapgraph;
pub mod tables;
pub mod word;

pub use codecheck::{Code, OverlapWitness, PrefixSuffixSystem, SystemCheck};
pub use counting::{FibTable, SymbolicSize};
pub use error::{Error, Result};
pub use overlapgraph::{OverlapGraph, SearchResult};
pub use word::BitWord;
