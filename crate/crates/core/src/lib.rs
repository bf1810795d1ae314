//! Exact decision procedures on finite dynamical systems: every point set is
//! finite, every distance is a scaled integer, and every verdict is produced
//! by an exhaustive search or a certified product-graph search, never by
//! sampling alone.
//!
//! The crate is organized around one model ([`model::FiniteSystem`]) and the
//! questions one can decide about it:
//!
//! * [`algebra`]: relation algebra on entourages and uniformity-base axioms.
//! * [`orbit`]: orbits, eventual cycles, minimality, Hausdorff distance,
//!   trap horizons for true orbits.
//! * [`graph`]: pseudo-orbit graphs, threshold grids, walk enumeration.
//! * [`verifier`]: certificate-producing checks for trapping, covering,
//!   minimality, and orbital shadowing, plus an independent enumeration
//!   oracle for cross-checking.
//! * [`zoo`]: generators for the system families used in tests and benches.
//! * [`report`]: canonical JSON reports with stable byte-level output.

#![forbid(unsafe_code)]
// index loops over square matrices keep both coordinates visible
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod graph;
pub mod model;
pub mod orbit;
pub mod report;
pub mod verifier;
pub mod zoo;

pub use model::{
    load_system, metric_entourage, save_system, Entourage, FiniteSystem, ModelError, PointSet,
    Walk,
};
