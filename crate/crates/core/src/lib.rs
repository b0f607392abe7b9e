//! Gowers sum and product subspaces over k-tuples, finite coloring search,
//! and SAT encodings of the corresponding avoidance problems.
//!
//! The crate is organised bottom-up:
//!
//! * [`tuple`] and [`subspace`]: the tuple spaces `X_k`/`Y_k`, the tetris and
//!   multiplicative shifts, and the generated structures (Gowers sum/product
//!   subspaces, FS and FP sets).
//! * [`algebra`]: the finite scaling identity behind the left-ideal argument.
//! * [`domain`] and [`coloring`]: finite boxes, canonical cell order, coloring
//!   files.
//! * [`oracle`]: brute-force witness and avoidance search, threshold scans.
//! * [`sat`]: CNF encoding, DIMACS, model decoding, external solver adapter.
//! * [`engine`]: campaigns over parameter grids and certificate emission.
//! * [`cli`]: the `gowers` command-line front end.

pub mod algebra;
pub mod cli;
pub mod coloring;
pub mod domain;
pub mod engine;
mod error;
pub mod oracle;
pub mod sat;
pub mod subspace;
pub mod tuple;

pub use error::{Error, Result};
