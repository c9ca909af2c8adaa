pub mod complex;
pub mod error;
pub mod homology;
pub mod io;
pub mod linalg;
pub mod minimal;
pub mod parallel;
pub mod presented;
pub mod random;
pub mod scalar;
pub mod series;
pub mod sym2;
pub mod theorems;

pub use complex::{ChainMap, FreeComplex, Homotopy};
pub use error::{Error, Result};
pub use linalg::SparseMatrix;
pub use parallel::Execution;
pub use scalar::{Ring, Scalar};
