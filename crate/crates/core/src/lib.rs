//! Exact computations with affine algebraic supergroups presented by
//! Harish-Chandra pairs over diagonalizable bases.

pub mod expr;
pub mod field;
pub mod poly;
pub mod superlin;
pub mod chargroup;
pub mod hopf;
pub mod hcp;
pub mod dgxrep;
mod mpoly;
pub mod smoothcheck;
mod lattice;
