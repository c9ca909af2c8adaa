//! Exact linear algebra over the supported rings.

pub mod field;
pub mod graded;
pub mod matrix;
pub mod snf;

pub use field::{inverse, is_invertible, kernel_basis, rank, rref};
pub use matrix::{mat_add, matmul, scale, SparseMatrix};
pub use snf::{in_column_span, invariant_factors, kernel_over_pid, smith_normal_form, solve, SmithForm};
