//! Exact workbench for Lie bialgebras with finite group actions and twists.
//!
//! The crate verifies the classical axioms (Jacobi, co-Jacobi, cocycle,
//! classical Yang-Baxter, twist equations, group-twisted compatibility) in
//! exact rational arithmetic, and builds quantizations truncated at a fixed
//! order in ℏ by solving one linear system per order.

pub mod error;
pub mod cli;
pub mod envelope;
pub mod exact;
pub mod gamma;
pub mod hquant;
pub mod lie;
pub mod report;
pub mod twists;

pub use error::{Error, Result};
