//! Symbolic dynamics for sofic shifts presented by finite labeled graphs.
//!
//! A sofic shift is the set of bi-infinite label sequences along paths of a
//! finite edge-labeled graph. This crate computes presentations (Fischer
//! covers, determinizations), census invariants (periodic, synchronizing,
//! and receptive point counts, entropy enclosures), period structure,
//! derived shifts and component trees, partial decision procedures for
//! embedding and factor questions, and cover constructions that realize
//! prescribed periodic behavior. Every decision procedure returns a
//! three-valued verdict whose YES and NO answers carry independently
//! checkable certificates; UNKNOWN records the bounds that were exhausted.

pub mod budget;
pub mod census;
pub mod decide;
pub mod entropy;
pub mod error;
pub mod format;
pub mod forge;
pub mod graph;
pub mod period;
pub mod present;
pub mod shift;
pub mod structure;
mod tail;
pub mod verify;
pub mod word;

pub mod corpus;

pub use error::{Error, Result};
