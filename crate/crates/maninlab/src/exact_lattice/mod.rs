//! Exact integer-matrix and finite-abelian-group algebra: Smith normal form,
//! group presentations, torsion subgroups, coinvariants, induced maps, and
//! injectivity tests. Everything is arbitrary-precision and deterministic.

mod action;
mod group;
mod hom;
mod matrix;
mod smith;

pub use action::{negation_matrix, GroupAction};
pub use group::FinAbGroup;
pub use hom::{null_space_lattice, AbHom};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};
