//! Exact linear algebra over [`Scalar`](crate::scalar::Scalar).

pub mod closure;
pub mod matrix;
pub mod skolem;
pub mod sparse;
pub mod subspace;

pub use closure::{expand, is_closed, kernel_partition, span_closure, BinaryStep, UnaryStep};
pub use matrix::DenseMatrix;
pub use skolem::{skolem_noether, MnMap};
pub use sparse::{combine, SparseVec};
pub use subspace::{kernel_of_columns, nullspace, solve_combination, SubspaceBasis, TrackedBasis};
