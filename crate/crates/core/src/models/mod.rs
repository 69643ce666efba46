//! Hand-coded matrices and factorized dispersion functions for the example systems.

mod kirchhoff;
mod mindlin;
mod twt;
mod wing;

pub use kirchhoff::{kirchhoff_dispersion, kirchhoff_radial, KirchhoffParams};
pub use mindlin::{
    f_branch_speed, f_branch_speed_asymptotic, lame_lambda, mindlin_block_diag, mindlin_c_matrix,
    mindlin_factorized, mindlin_full_matrix, mindlin_reduced_system, plane_stress_lambda,
    shear_modulus, t_matrix, velocity_residual_a, wave_speeds, MindlinCoeffs, MindlinParams,
    WaveSpeeds,
};
pub use twt::{twt_matrix, twt_matrix_physical, twt_u_matrix, TwtParams};
pub use wing::{wing_dispersion, wing_matrix, wing_system, WingCoeffs, WingParams};

use num::Signed;

use crate::polyalg::{MultiPoly, Rational};

/// Coupling variable in every model matrix.
pub const COUPLING: &str = "b";
/// Phase velocity variable of the TWT `u`-form.
pub const PHASE_VELOCITY: &str = "u";

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("parameter `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("Poisson ratio {0} outside the admissible range")]
    Poisson(f64),
    #[error("longitudinal speed is infinite at Poisson ratio 1/2")]
    Incompressible,
    #[error("wavenumber must be nonzero")]
    ZeroWavenumber,
    #[error("phase speed must be nonzero")]
    ZeroSpeed,
    #[error("coupling principal parameter is zero; use the physical form")]
    ZeroGamma,
}

pub(crate) fn positive(name: &'static str, v: &Rational) -> Result<(), ModelError> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(ModelError::NonPositive(name))
    }
}

pub(crate) fn w() -> MultiPoly {
    MultiPoly::var(crate::lagrangian::OMEGA)
}

pub(crate) fn v(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}

pub(crate) fn c(r: &Rational) -> MultiPoly {
    MultiPoly::constant(r.clone())
}
