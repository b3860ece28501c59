//! Exact counting and classification of the combinatorial types of
//! nonattacking configurations of chess riders.
//!
//! A rider moves any distance along a fixed set of lines. Placing `q` copies
//! so that none attacks another, the *labelled type* of the configuration
//! records which region of each piece's move lines contains each other
//! piece. The crate enumerates those types three independent ways
//! ([`census`] on lattice boards and by exact geometric placement, and
//! [`finitefield`] point counts of the configuration arrangement) and checks
//! them against the closed forms and the table of known values in
//! [`formulas`].

pub mod boards;
pub mod cache;
pub mod census;
pub mod cli;
pub mod error;
pub mod finitefield;
pub mod formulas;
pub mod geometry;
pub mod signature;

pub use error::{Error, Result};
pub use geometry::{BasicMove, MoveSet, Point};
