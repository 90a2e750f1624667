//! Scalar kernels and matrix semirings over them.

mod kernel;
mod matrix;
mod scalar;

pub use kernel::{Element, Kernel, KernelFlags, WeakCancellation};
pub use matrix::{SemiMatrix, COMPLEMENT_SEARCH_LIMIT};
pub use scalar::Trop;
