//! Exact verification toolkit for locally conformally symplectic structures
//! on Lie-algebra models of compact solvmanifolds.
//!
//! The Chevalley–Eilenberg complex of a model is finite, so cohomology, Hodge
//! theory and the almost-Kähler operator identities reduce to exact linear
//! algebra over the rationals (or Gaussian rationals once complexified).

pub mod acs;
pub mod algebra;
pub mod cohomology;
pub mod confsym;
pub mod error;
pub mod hodge;
pub mod jsearch;
pub mod linalg;
pub mod models;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::{GaussianRational, Rational, Scalar};
