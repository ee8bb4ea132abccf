//! Exact verification of ramification computations on nodal curves.
//!
//! This crate mechanically re-derives, in exact arithmetic, the chain of
//! computations behind a divisor-class calculation on the moduli of curves:
//!
//! - vanishing sequences and ramification weights of twisted linear series
//!   on the projective line ([`p1`]),
//! - the analogous weights on elliptic curves, over the rationals and over
//!   small prime fields ([`elliptic`]),
//! - a rewrite engine for intersection classes on a three-fold fiber
//!   product, pushed forward to a one-parameter base ([`intersect`]),
//! - the linear relations forced on twist multiplicities by degree
//!   bookkeeping in families ([`families`]),
//! - node-multiplicity bookkeeping for limit series on flag curves
//!   ([`flag`]).
//!
//! Everything is computed over the rationals (or `Z/p`) with no floating
//! point and no root-finding; all claimed values are either recomputed from
//! scratch or certified by independent identities. The [`report`] module
//! packages outcomes for the command-line runner.

pub mod elliptic;
pub mod error;
pub mod expand;
pub mod families;
pub mod field;
pub mod flag;
pub mod gpoly;
pub mod intersect;
pub mod matrix;
pub mod p1;
pub mod poly;
pub mod rat;
pub mod ratfn;
pub mod report;
pub mod sampling;
pub mod series;

pub use error::{Error, Result};
