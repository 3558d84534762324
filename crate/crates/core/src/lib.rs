//! Hamilton ℓ-cycles in k-uniform hypergraphs at desk scale.
//!
//! The crate is organised around a small set of modules:
//!
//! - [`graph`]: the [`KGraph`] type with degree, codegree, link-graph and
//!   cross-set counting primitives, plus its JSON and binary formats.
//! - [`paths`]: ℓ-path / ℓ-cycle values, validation and canonical paths in
//!   k-partite hosts.
//! - [`search`]: exact oracles (Hamilton ℓ-cycle/path search, maximum
//!   `Y_{k,b}`-tilings, maximum `Y_{k,b}`-free graphs, bipartite matching).
//! - [`constructions`]: the space barrier, ideal extremal instances,
//!   perturbations, intersecting stars and random instances.
//! - [`tiling`]: greedy `Y_{k,b}`-tiling with exchange augmentation and
//!   extremal certificates.
//! - [`extremal`]: the extremal-case pipeline that classifies vertices,
//!   builds a short balancing path and assembles a Hamilton ℓ-cycle.
//!
//! All vertex sets are 64-bit masks, so every graph has at most 64 vertices.

pub mod constructions;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod io;
pub mod paths;
pub mod rng;
pub mod search;
pub mod tiling;
pub mod vset;

pub use error::{Error, Result};
pub use graph::{DegreeProfile, KGraph, LinkGraph};
pub use paths::{EllCycle, EllPath, PartitionedKGraph};
pub use search::{SearchBudget, SearchOutcome};
pub use vset::VSet;

/// Schema version embedded in every emitted report and instance file.
pub const SCHEMA_VERSION: u32 = 1;

/// Library version string embedded in reports.
pub const LIBRARY_VERSION: &str = env!("CARGO_PKG_VERSION");
