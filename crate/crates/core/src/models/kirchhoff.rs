use super::{c, positive, v, w, ModelError};
use crate::polyalg::{MultiPoly, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct KirchhoffParams {
    pub rho: Rational,
    pub h: Rational,
    pub d: Rational,
}

impl KirchhoffParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("rho", &self.rho)?;
        positive("h", &self.h)?;
        positive("D", &self.d)
    }
}

/// `rho h w^2 - D (kx^2 + ky^2)^2`.
pub fn kirchhoff_dispersion(p: &KirchhoffParams) -> Result<MultiPoly, ModelError> {
    p.validate()?;
    let k2 = v("kx").pow(2) + v("ky").pow(2);
    Ok(c(&(&p.rho * &p.h)) * w().pow(2) - c(&p.d) * k2.pow(2))
}

/// `rho h w^2 - D k^4`.
pub fn kirchhoff_radial(p: &KirchhoffParams) -> Result<MultiPoly, ModelError> {
    p.validate()?;
    Ok(c(&(&p.rho * &p.h)) * w().pow(2) - c(&p.d) * v("k").pow(4))
}
