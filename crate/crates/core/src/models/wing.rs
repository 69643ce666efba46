use super::{c, positive, v, w, ModelError, COUPLING};
use crate::matdet::{CoupledSystem, Matrix, PolyMatrix};
use crate::polyalg::{MultiPoly, Rational};

/// Bending-torsion wing beam; fields ordered `(theta, w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WingParams {
    pub m: Rational,
    pub im: Rational,
    pub ei: Rational,
    pub gj: Rational,
    pub a: Rational,
}

impl WingParams {
    pub fn unit() -> Self {
        let one = Rational::from_integer(1.into());
        WingParams {
            m: one.clone(),
            im: one.clone(),
            ei: one.clone(),
            gj: one.clone(),
            a: one,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        positive("m", &self.m)?;
        positive("I_m", &self.im)?;
        positive("EI", &self.ei)?;
        positive("GJ", &self.gj)
    }

    pub fn coeffs(&self) -> WingCoeffs {
        WingCoeffs {
            m: c(&self.m),
            im: c(&self.im),
            ei: c(&self.ei),
            gj: c(&self.gj),
            a: c(&self.a),
        }
    }
}

/// Wing coefficients as polynomials, numeric or symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct WingCoeffs {
    pub m: MultiPoly,
    pub im: MultiPoly,
    pub ei: MultiPoly,
    pub gj: MultiPoly,
    pub a: MultiPoly,
}

impl WingCoeffs {
    /// Parameters as the variables `m, Im, EI, GJ, a`.
    pub fn symbolic() -> Self {
        WingCoeffs {
            m: v("m"),
            im: v("Im"),
            ei: v("EI"),
            gj: v("GJ"),
            a: v("a"),
        }
    }

    fn g1(&self) -> MultiPoly {
        &self.im * w().pow(2) - &self.gj * v("k").pow(2)
    }

    fn g2(&self) -> MultiPoly {
        &self.m * w().pow(2) - &self.ei * v("k").pow(4)
    }
}

pub fn wing_matrix(c: &WingCoeffs) -> PolyMatrix {
    let b = v(COUPLING);
    let k4 = v("k").pow(4);
    let off = &b * &c.a * &c.ei * &k4;
    let m11 = c.g1() - b.pow(2) * c.a.pow(2) * &c.ei * &k4;
    Matrix::from_rows(vec![vec![m11, off.clone()], vec![off, c.g2()]]).expect("square")
}

pub fn wing_system(c: &WingCoeffs) -> CoupledSystem<MultiPoly> {
    let b = v(COUPLING);
    let k4 = v("k").pow(4);
    let off = &b * &c.a * &c.ei * &k4;
    let coupling = Matrix::from_rows(vec![
        vec![-(b.pow(2) * c.a.pow(2) * &c.ei * &k4), off.clone()],
        vec![off, MultiPoly::zero()],
    ])
    .expect("square");
    CoupledSystem::new(
        Matrix::diag(vec![c.g1()]),
        Matrix::diag(vec![c.g2()]),
        coupling,
        COUPLING,
    )
    .expect("dimensions match")
}

/// `G1 G2 - b^2 a^2 EI k^4 m w^2`.
pub fn wing_dispersion(c: &WingCoeffs) -> MultiPoly {
    c.g1() * c.g2() - v(COUPLING).pow(2) * c.a.pow(2) * &c.ei * v("k").pow(4) * &c.m * w().pow(2)
}
