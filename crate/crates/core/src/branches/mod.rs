//! Numerical branches of dispersion relations and their asymptotics.

mod order;
mod roots;
mod series;
mod trace;

pub use order::{log_samples, residual_order, OrderEstimate, ORDER_TOL};
pub use roots::{expand_roots, real_roots, real_roots_coeffs, Root};
pub use series::{
    asymptotic_slopes, laurent_s, lower_series, omega0_squared, pqr, s_infinity,
    s_quadratic_residual, s_quadratic_value, upper_series, SBranch, SeriesCoeffs, SeriesKind,
    OMEGA_ABS,
};
pub use trace::{roots_at, trace_branches, write_csv, BranchTrace, GRID_REL, TRACE_TOL};

use std::collections::HashMap;

use crate::lagrangian::OMEGA;
use crate::models::ModelError;
use crate::polyalg::{MultiPoly, PolyError, Rational};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BranchError {
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),
    #[error("grid is empty")]
    EmptyGrid,
    #[error("grid must be strictly increasing")]
    GridNotIncreasing,
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("series is singular at zero coupling")]
    ZeroCoupling,
    #[error("series order must be nonnegative, got {0}")]
    BadOrder(i64),
    #[error("{0}")]
    BadSamples(&'static str),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn exact(x: f64) -> Result<Rational, BranchError> {
    Rational::from_float(x).ok_or(BranchError::NonFinite(x))
}

/// `G / dG/dw` at `(k, w)`, evaluated exactly and then rounded.
pub fn newton_residual(g: &MultiPoly, kvar: &str, k: f64, w: f64) -> Result<f64, BranchError> {
    let mut at = HashMap::new();
    at.insert(kvar.to_string(), exact(k)?);
    at.insert(OMEGA.to_string(), exact(w)?);
    newton_residual_exact(g, &at)
}

/// `G / dG/dw` at an exact point.
pub fn newton_residual_exact(
    g: &MultiPoly,
    at: &HashMap<String, Rational>,
) -> Result<f64, BranchError> {
    let v = g.eval_exact(at)?;
    let d = g.derivative(OMEGA)?.eval_exact(at)?;
    if num::Zero::is_zero(&d) {
        return Ok(if num::Zero::is_zero(&v) {
            0.0
        } else {
            f64::INFINITY
        });
    }
    Ok(crate::polyalg::rational::to_f64(&(v / d)))
}
