use num::{One, Zero};

use super::{positive, v, w, ModelError, COUPLING, PHASE_VELOCITY};
use crate::matdet::{Matrix, PolyMatrix};
use crate::polyalg::{MultiPoly, Rational};

/// Traveling-wave tube: transmission line `Q` coupled to an electron beam `q`.
///
/// `beta` stands for `sigma_B omega_rp^2 / (4 pi)`, kept as one rational so
/// that every coefficient stays exact.
#[derive(Clone, Debug, PartialEq)]
pub struct TwtParams {
    pub c: Rational,
    pub l: Rational,
    pub c_c: Rational,
    pub beta: Rational,
    pub omega_rp: Rational,
    pub v0: Rational,
    pub b: Rational,
}

impl TwtParams {
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("C", &self.c)?;
        positive("L", &self.l)?;
        positive("C_c", &self.c_c)?;
        positive("beta", &self.beta)?;
        Ok(())
    }

    /// `beta` from a floating beam parameter `sigma_B`.
    pub fn beta_from_sigma(sigma_b: f64, omega_rp: f64) -> Option<Rational> {
        Rational::from_float(sigma_b * omega_rp * omega_rp / (4.0 * std::f64::consts::PI))
    }

    /// `w^2 = 1 / (C L)`.
    pub fn w_squared(&self) -> Rational {
        Rational::one() / (&self.c * &self.l)
    }

    /// `omega_c^2 = 1 / (C_c L)`.
    pub fn omega_c_squared(&self) -> Rational {
        Rational::one() / (&self.c_c * &self.l)
    }

    /// `gamma = b^2 beta / C`.
    pub fn gamma(&self) -> Rational {
        &self.b * &self.b * &self.beta / &self.c
    }
}

fn k() -> MultiPoly {
    v("k")
}

fn first_entry(p: &TwtParams) -> MultiPoly {
    // (omega_c^2 - w^2_freq) / w^2 = C/C_c - C L omega^2
    MultiPoly::constant(&p.c / &p.c_c) - w().pow(2).scale(&(&p.c * &p.l))
}

/// Matrix in `(k, w, b)` with `gamma` fixed by `p.b`; needs `p.b != 0`.
pub fn twt_matrix(p: &TwtParams) -> Result<PolyMatrix, ModelError> {
    p.validate()?;
    let gamma = p.gamma();
    if gamma.is_zero() {
        return Err(ModelError::ZeroGamma);
    }
    let b = v(COUPLING);
    let k2 = k().pow(2);
    let drift = MultiPoly::constant(&p.omega_rp * &p.omega_rp) - (w() - k().scale(&p.v0)).pow(2);
    let m22 = b.pow(2) * (&k2 + drift.scale(&(Rational::one() / gamma)));
    Ok(Matrix::from_rows(vec![
        vec![&k2 + first_entry(p), &b * &k2],
        vec![&b * &k2, m22],
    ])
    .expect("square"))
}

/// Matrix with the beam term written through `beta`; valid at any `b`.
pub fn twt_matrix_physical(p: &TwtParams) -> Result<PolyMatrix, ModelError> {
    p.validate()?;
    let b = v(COUPLING);
    let k2 = k().pow(2);
    let drift = MultiPoly::constant(&p.omega_rp * &p.omega_rp) - (w() - k().scale(&p.v0)).pow(2);
    let m22 = b.pow(2) * &k2 + drift.scale(&(&p.c / &p.beta));
    Ok(Matrix::from_rows(vec![
        vec![&k2 + first_entry(p), &b * &k2],
        vec![&b * &k2, m22],
    ])
    .expect("square"))
}

/// Phase-velocity form multiplied through by `u^2`, a polynomial in `(u, w, b)`.
pub fn twt_u_matrix(p: &TwtParams) -> Result<PolyMatrix, ModelError> {
    p.validate()?;
    let gamma = p.gamma();
    if gamma.is_zero() {
        return Err(ModelError::ZeroGamma);
    }
    let u = v(PHASE_VELOCITY);
    let b = v(COUPLING);
    let w2 = w().pow(2);
    let u2 = u.pow(2);
    let beam = &u2 * MultiPoly::constant(&p.omega_rp * &p.omega_rp)
        - &w2 * (&u - MultiPoly::constant(p.v0.clone())).pow(2);
    let m22 = b.pow(2) * (&w2 + beam.scale(&(Rational::one() / gamma)));
    Ok(Matrix::from_rows(vec![
        vec![&w2 + &u2 * first_entry(p), &b * &w2],
        vec![&b * &w2, m22],
    ])
    .expect("square"))
}
