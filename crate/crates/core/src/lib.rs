//! Hochschild cohomology of triangular algebras through the trajectory-length
//! spectral sequence.

pub mod algebra;
pub mod error;
pub mod field;
pub mod hochcomplex;
pub mod linalg;
pub mod quiver;
pub mod spectral;
pub mod trajectory;
pub mod zoo;

pub use error::{Error, Result};
pub use field::{Field, FieldTag, PrimeField, Rationals};
pub use linalg::{Matrix, QuotientBasis, SparseVec, Subspace};
