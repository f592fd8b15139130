//! Exact combinatorics for SYZ mirrors of smoothings of toric Gorenstein
//! singularities.
//!
//! The pipeline starts from a lattice polygon (or segment) `P`, finds its
//! Minkowski decompositions into unimodular simplices, builds the mirror
//! polynomial `g = ∏ (1 + Σ z^u)` together with its open Gromov-Witten
//! tables, and matches it against the toric-resolution mirror family by a
//! monomial rescaling plus a specialization of parameters. All arithmetic is
//! exact.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod json;
pub mod lattice;
pub mod minkowski;
pub mod mirror;
pub mod svg;
pub mod transition;
pub mod tropical;

pub use error::{Error, Result};
pub use lattice::{IntVector, LatticePolytope, RaySet, UnimodularSimplex};
pub use minkowski::{CayleyCone, MinkowskiDecomposition};
