//! Exact-arithmetic toolkit for computations on compactified homogeneous
//! varieties: integer-matrix and finite-abelian-group algebra, root-system
//! combinatorics, orbit-finiteness verdicts, anticanonical growth exponents
//! (a, b), and brute-force bounded-height point censuses with local densities.

pub mod error;
pub mod exact_lattice;
pub mod height_census;
pub mod manin_exponents;
pub mod orbit_finiteness;
pub mod rational;
pub mod root_systems;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
