//! Subspaces shared by unit tests.

use crate::linear::{int_matrix, kernel_basis, Subspace};
use crate::oriented::OrientedMatroid;

/// `x1 + x2 - x3 = x3 - x4 - x5 = 0` in `Q^5`.
pub fn r5_subspace() -> Subspace {
    kernel_basis(&int_matrix(&[[1, 1, -1, 0, 0], [0, 0, 1, -1, -1]]), 5).unwrap()
}

pub fn r5_matroid() -> OrientedMatroid {
    OrientedMatroid::from_subspace(&r5_subspace(), false).unwrap()
}

/// `x1 + x2 - x3 = 0` in `Q^3`.
pub fn triangle_subspace() -> Subspace {
    kernel_basis(&int_matrix(&[[1, 1, -1]]), 3).unwrap()
}

pub fn triangle_matroid() -> OrientedMatroid {
    OrientedMatroid::from_subspace(&triangle_subspace(), false).unwrap()
}

/// `x1 - x2 - x3 - x4 = 0` in `Q^4`.
pub fn hyperplane_subspace() -> Subspace {
    kernel_basis(&int_matrix(&[[1, -1, -1, -1]]), 4).unwrap()
}
