//! SU(n) generalized coherent states.
//!
//! * [`generators`]: elementary matrices, the β/Θ/η family and the λ-numbering.
//! * [`fundamental`]: the recursive `L·M·R` parameterization, its inverse, coherent
//!   states of the fundamental representation, metric and measure.
//! * [`symrep`]: the symmetric representation `T^N_n` in the occupation basis.
//! * [`quadrature`]: exact tensor-product integration over the coset space.
//! * [`verify`]: the invariant suite run by the command-line tool.
//!
//! Numerics are generic over [`Real`] (`f32`, `f64`); the aliases below fix `f64`.

pub mod error;
pub mod fundamental;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod quadrature;
pub mod random;
pub mod scalar;
pub mod symrep;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Angles = fundamental::AngleCoordinates<f64>;
pub type Tree = fundamental::DecompositionTree<f64>;
pub type Matrix = linalg::CMatrix<f64>;
pub type Grid = quadrature::QuadratureGrid<f64>;
pub type RepState = symrep::RepCoherentState<f64>;
pub type Operator = symrep::SparseOperator<f64>;
pub type Generators = generators::GeneratorSet<f64>;
