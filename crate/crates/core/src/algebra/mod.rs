//! Finite-dimensional algebras, bimodules and triangular algebras, all
//! presented by rational structure constants.

mod bilinear;
mod bimodule;
mod fdalg;
mod tbimodule;
mod triangular;

pub use bilinear::{convert_vec, Bilinear};
pub use bimodule::{check_bilinearity, tensor_over, Bimodule, TensorOver};
pub use fdalg::{center, is_separable, FiniteDimAlgebra, Violation};
pub use tbimodule::TBimodule;
pub use triangular::{
    build_tensorial, validate_triangular, Block, BlockRange, TriangularAlgebra, ValidationReport,
};

pub(crate) use bilinear::QQ;
