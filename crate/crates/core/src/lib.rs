//! Exact computation of Gomory corner-polyhedron vertices through sails of projected
//! affine lattices, with checkers for proximity, sparsity and integrality-gap bounds.
//!
//! All arithmetic is exact: integers are `BigInt`, rationals are reduced `BigRational`.

pub mod battery;
pub mod cone;
pub mod corner;
pub mod error;
pub mod hnf;
pub mod instances;
pub mod knapsack;
pub mod lattice;
pub mod lp;
pub mod matrix;
pub mod minors;
pub mod num;
pub mod oracle;
pub mod serde_big;
pub mod sparsity;
pub mod transference;

pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use num::Rat;
