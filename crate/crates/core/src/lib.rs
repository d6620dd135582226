//! Exact computations on realizable oriented matroids and on the cell
//! structures of nonnegative and real matroid Schubert varieties.
//!
//! The pipeline starts from a rational matrix (equations or spanning rows of a
//! subspace `V ⊂ Q^E`), builds the oriented matroid of `V`, its flat and
//! acyclic-flat lattices, and from those the face posets of the nonnegative
//! Schubert variety (cells indexed by intervals of acyclic flats) and of the
//! real Schubert variety (cells indexed by flat pairs and topes of minors).
//! Topological claims about these complexes are certified through rational
//! homology of order complexes and through explicit shellings.

pub mod cell;
pub mod error;
#[cfg(test)]
mod fixtures;
pub mod homology;
pub mod linear;
pub mod oriented;
pub mod parse;
pub mod poset;
pub mod real;
pub mod report;
pub mod sets;
pub mod shelling;
pub mod sign;
pub mod tnn;

pub use error::{Error, Result};
pub use linear::{kernel_basis, sign_feasible, FeasibilityResult, Rational, SignPattern, Subspace};
pub use oriented::{check_axioms, AxiomReport, Flat, OrientedMatroid};
pub use poset::GradedPoset;
pub use sets::ElementSet;
pub use sign::{Sign, SignVector};

/// Largest ground set accepted without an explicit override.
pub const DEFAULT_GROUND_LIMIT: usize = 14;

/// Hard upper bound imposed by the bitset encoding of coordinate subsets.
pub const MAX_GROUND: usize = 64;
