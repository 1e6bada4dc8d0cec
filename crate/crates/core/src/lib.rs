//! Discrete Morse matchings, elementary collapses and non-evasiveness for
//! finite simplicial and cubical complexes.
//!
//! The crate is `no_std` (it needs `alloc`). All geometric predicates run on
//! exact rationals, and every collapsing or non-evasiveness procedure returns
//! a certificate that can be replayed by the independent checkers in
//! [`verify`].

#![no_std]

extern crate alloc;

pub mod collapse;
pub mod complex;
pub mod error;
pub mod gallery;
pub mod geometry;
pub mod morse;
pub mod subdivision;
pub mod verify;

pub use complex::{Cell, CellComplex, Cube, CubicalComplex, Simplex, SimplicialComplex, VertexId};
pub use error::{Error, Result};
