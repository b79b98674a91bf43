//! Exact structure-constant computations for n-Lie algebras and n-Lie
//! bialgebras: axiom checks, representations and their cohomology, duals,
//! operad-matrix conditions, doubles and Manin triples.
//!
//! All arithmetic is over arbitrary-precision rationals; every check is an
//! exact zero test.

pub mod algebra;
pub mod bialgebra;
pub mod catalog;
pub mod cli;
pub mod cochain;
pub mod double;
pub mod error;
pub mod index;
pub mod io;
pub mod linalg;
pub mod operad;
pub mod rep;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use algebra::NLieAlgebra;
pub use error::{Error, Result};
pub use report::CheckReport;
pub use scalar::{Scalar, Vector};
