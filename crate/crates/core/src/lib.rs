//! Exact computations linking Lie algebras, their enveloping Hopf algebras and
//! truncated formal group laws, plus checks for Lie pairs.
//!
//! Scalars are Gaussian rationals, so every check is an exact equality.

pub mod bch;
pub mod error;
pub mod fgl;
pub mod lie_pair;
pub mod liealg;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod series;
pub mod spec_io;
pub mod strategy;
pub mod uea;

pub use error::{Error, Result};
pub use fgl::GroupLaw;
pub use liealg::LieAlgebra;
pub use linalg::LinearMap;
pub use report::{Failure, Format, Report, Verdict};
pub use scalar::Scalar;
pub use series::{MultiIndex, TruncSeries};
pub use uea::{Enveloping, PbwPoly};
