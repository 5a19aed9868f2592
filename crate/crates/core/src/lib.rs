//! Self-correcting-memory toolkit built around *slead* classical codes and
//! their hypergraph products.
//!
//! A slead (self-loop enriched acyclic digraph) is a DAG in which every vertex
//! carries one bit and one parity check; the check on a vertex reads its own
//! bit plus the bits of its direct predecessors. Removing a single check
//! ("depletion") opens up exactly one codeword, whose support is confined to
//! the causal cone of the depleted vertex. Taking the hypergraph product of two
//! depleted sleads gives a CSS code whose stabilizers inherit the factor
//! structure, and stripping the product down to the neighbourhood of its
//! logical operators ("coring") preserves both the code dimension and the
//! distance while drastically shrinking the qubit count.
//!
//! The crate covers the full pipeline:
//!
//! - [`f2`]: bit-packed GF(2) linear algebra (rank, kernel, solve, RREF).
//! - [`slead`]: slead validation, depletion, codeword construction, edge
//!   mediation.
//! - [`pinwheel`]: aperiodic pinwheel tilings as a concrete slead family with
//!   exact integer geometry.
//! - [`product`]: hypergraph products, code parameters, bare logicals.
//! - [`coring`]: the coring reduction and its preservation checks.
//! - [`barrier`]: energy-barrier bounds (greedy beam search, exact minimax,
//!   path multiplicity).
//! - [`kmc`]: rejection-free kinetic Monte Carlo with array / Fenwick /
//!   binned transition trackers.
//! - [`decode`]: min-sum BP with OSD fallback, an exact maximum-likelihood
//!   oracle, and relaxation-time prior calibration.
//! - [`lifetime`]: the memory-lifetime measurement protocol tying the above
//!   together.
//!
//! Everything here is `no_std`-compatible (with `alloc`); file formats, CLI,
//! and parallel ensemble running live in the companion `cored-cli` crate.
#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod barrier;
pub mod coring;
pub mod decode;
pub mod f2;
pub mod kmc;
pub mod lifetime;
pub mod math;
pub mod pinwheel;
pub mod product;
pub mod rng;
pub mod slead;

pub use f2::{BinaryMatrix, BitVector};
pub use product::CssCode;
pub use slead::{ClassicalCode, Slead};
