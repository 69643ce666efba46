//! Exact multivariate polynomials, truncated series and scalar helpers.

mod complex;
mod error;
mod multipoly;
pub mod rational;
mod scalar;
mod series;
pub mod text;

pub use complex::{ComplexPoly, IMAG_UNIT};
pub use error::PolyError;
pub use multipoly::MultiPoly;
pub use rational::{int, rat, Rational};
pub use scalar::{Num, Scalar};
pub use series::{series_substitute, TruncSeries};
