// SPDX-License-Identifier: Apache-2.0

//! Sparse containers and the scalar algebra the kernels are parameterized
//! over. Absent entries always mean the implicit identity of the container's
//! role: `+inf` for distance vectors, "not selected" for masks, "no edge"
//! for adjacency matrices.

mod mask;
mod matrix;
pub mod semiring;
mod vector;

pub use mask::Mask;
pub use matrix::{BuildReport, SparseMatrix};
pub use semiring::Semiring;
pub use vector::SparseVector;
