//! Exact intersection-theory engine for a pair of rigid Calabi-Yau
//! threefolds connected by projective flat deformation.
//!
//! The crate computes, in exact integer arithmetic only:
//!
//! * trilinear cup-product forms, cubic self-intersections, and second
//!   Chern class pairings of divisor classes ([`forms`]);
//! * the Riemann-Roch bookkeeping that turns a divisor's `(D^3, D.c2)`
//!   pair into a Hilbert polynomial, with integrality and divisibility
//!   consequences ([`chern`]);
//! * the curated intersection data of the two built-in threefolds, their
//!   topological distinguishers, and the rank-4 sublattice bookkeeping
//!   ([`models`]);
//! * the Diophantine search that matches the two ample families'
//!   invariants and the deformation certificates it produces
//!   ([`matcher`]).
//!
//! # Features
//!
//! `parallel` (default): the box enumeration in [`matcher`] fans out over
//! rayon. Disabling the feature compiles the sequential path only; both
//! paths produce byte-identical results, and the bench suite compares
//! them.

pub mod chern;
pub mod error;
pub mod exact;
pub mod forms;
pub mod matcher;
pub mod models;

pub use error::{Error, Result};
pub use exact::{int, Int, IntMatrix, MultiPoly, Rational, SmithNormalForm};
