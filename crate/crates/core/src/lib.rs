//! EulerMerge: set-system simplification for well-formed Euler diagrams.
//!
//! A collection of possibly wildly overlapping sets rarely admits an Euler
//! diagram in which every set is a single connected, simply bounded area.
//! This crate simplifies such a system by merging similar sets, guided by
//! the labeled dual graph of its zones, until the system is drawable, and
//! then draws it:
//!
//! 1. [`set_system`] parses set systems and computes their zones.
//! 2. [`dual_graph`] builds the labeled dual graph and supports set merges.
//! 3. [`merge`] repairs planarity and removes concurrency, logging every
//!    merge; [`genus`] optionally removes residual pocket obstructions.
//! 4. [`planarity`] provides the planarity test, embeddings, and minimal
//!    nonplanar witnesses the merge phases rely on.
//! 5. [`layout`] draws the simplified dual graph crossing-free and
//!    [`curves`] routes one closed simple curve per surviving set.
//! 6. [`svg`] renders diagrams and intermediate stages; [`stats`] collects
//!    per-run and corpus statistics.

pub mod curves;
pub mod dual_graph;
pub mod error;
pub mod genus;
mod geom;
pub mod layout;
pub mod merge;
pub mod planarity;
pub mod set_system;
pub mod stats;
pub mod svg;

pub use curves::{route_curves, smooth_curves, Curve, Diagram};
pub use dual_graph::{ConnectEdge, DualGraph};
pub use error::{Error, Result};
pub use genus::{genus_removal, genus_separation};
pub use layout::{planar_layout, refine_layout, Layout};
pub use merge::{
    euler_merge, graph_is_planar, kuratowski_witness, MergeLog, MergeReason, MergeStep,
    PipelineResult,
};
pub use set_system::{SetSystem, ZoneLabel};
pub use stats::{aggregate, run_stats, Aggregates, RunStats};
