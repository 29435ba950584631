//! Symmetric unique-neighbor expanders and simply-symmetric LDPC codes.
//!
//! The crate builds bipartite, simply-generator-symmetric Cayley graphs on
//! PGL2(q^n), realizes their symmetric Alon–Capalbo products as Cayley graphs
//! on `PSL2 ⋊ C_{q+1}`, and constructs the matching Tanner codes, including the
//! density-20 cyclic base codes of lengths 79 and 158.

pub mod algebra;
pub mod bits;
pub mod codes;
pub mod error;
pub mod expansion;
pub mod fixtures;
pub mod graph;
pub mod lsv;

pub use error::{Error, Result};
pub mod symmetry;
pub mod tanner;
