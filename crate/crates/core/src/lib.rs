//! Exact symbolic dispersion relations for coupled quadratic Lagrangians.

pub mod branches;
pub mod crosspoint;
pub mod lagparse;
pub mod lagrangian;
pub mod library;
pub mod matdet;
pub mod mechanalog;
pub mod models;
pub mod polyalg;
pub mod verify;

pub use polyalg::{ComplexPoly, MultiPoly, Num, PolyError, Rational, TruncSeries};
