use num::One;

use super::{c, positive, v, w, ModelError, COUPLING};
use crate::matdet::{ComplexMatrix, CoupledSystem, Matrix};
use crate::polyalg::rational::{rat, to_f64};
use crate::polyalg::{ComplexPoly, MultiPoly, Rational};

/// Mindlin-Reissner plate; fields ordered `(psi_y, psi_x, w)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MindlinParams {
    pub rho: Rational,
    pub h: Rational,
    pub d: Rational,
    pub nu: Rational,
    pub kappa: Rational,
    pub g: Rational,
    /// Coupling amplitude used when the model is evaluated numerically.
    pub b: Rational,
}

impl MindlinParams {
    /// `rho = h = D = kappa = G = 1`, `nu = 1/2`.
    pub fn unit(b: Rational) -> Self {
        let one = Rational::one();
        MindlinParams {
            rho: one.clone(),
            h: one.clone(),
            d: one.clone(),
            nu: rat(1, 2),
            kappa: one.clone(),
            g: one,
            b,
        }
    }

    /// `G` and `D` derived from Young's modulus.
    pub fn from_young(
        e: Rational,
        nu: Rational,
        rho: Rational,
        h: Rational,
        kappa: Rational,
        b: Rational,
    ) -> Result<Self, ModelError> {
        positive("E", &e)?;
        let p = MindlinParams {
            g: shear_modulus(&e, &nu),
            d: &e * h.pow(3) / (Rational::from_integer(12.into()) * (Rational::one() - &nu * &nu)),
            rho,
            h,
            nu,
            kappa,
            b,
        };
        p.validate()?;
        Ok(p)
    }

    /// Positivity and `-1 < nu <= 1/2`.
    pub fn validate(&self) -> Result<(), ModelError> {
        positive("rho", &self.rho)?;
        positive("h", &self.h)?;
        positive("D", &self.d)?;
        positive("kappa", &self.kappa)?;
        positive("G", &self.g)?;
        if self.nu <= -Rational::one() || self.nu > rat(1, 2) {
            return Err(ModelError::Poisson(to_f64(&self.nu)));
        }
        Ok(())
    }

    pub fn coeffs(&self) -> MindlinCoeffs {
        MindlinCoeffs {
            rho: c(&self.rho),
            h: c(&self.h),
            d: c(&self.d),
            nu: c(&self.nu),
            kappa: c(&self.kappa),
            g: c(&self.g),
        }
    }

    /// `c_T^2 = G / rho`.
    pub fn ct_squared(&self) -> Rational {
        &self.g / &self.rho
    }

    /// `c_P^2 = 12 D / (rho h^3)`, the plate speed implied by `D`.
    pub fn cp_squared(&self) -> Rational {
        Rational::from_integer(12.into()) * &self.d / (&self.rho * self.h.pow(3))
    }
}

/// Mindlin coefficients as polynomials, numeric or symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct MindlinCoeffs {
    pub rho: MultiPoly,
    pub h: MultiPoly,
    pub d: MultiPoly,
    pub nu: MultiPoly,
    pub kappa: MultiPoly,
    pub g: MultiPoly,
}

impl MindlinCoeffs {
    /// Parameters as the variables `rho, h, D, nu, kappa, G`.
    pub fn symbolic() -> Self {
        MindlinCoeffs {
            rho: v("rho"),
            h: v("h"),
            d: v("D"),
            nu: v("nu"),
            kappa: v("kappa"),
            g: v("G"),
        }
    }

    /// `rho h^3 / 12 * w^2`
    fn rotary(&self) -> MultiPoly {
        (&self.rho * self.h.pow(3)).scale(&rat(1, 12)) * w().pow(2)
    }

    fn shear(&self) -> MultiPoly {
        &self.kappa * &self.h * &self.g
    }

    fn half_one_minus_nu(&self) -> MultiPoly {
        (MultiPoly::one() - &self.nu).scale(&rat(1, 2))
    }

    /// `h (rho w^2 - kappa G k^2)` for a given `k^2`.
    fn w_entry(&self, k2: &MultiPoly) -> MultiPoly {
        &self.h * (&self.rho * w().pow(2) - &self.kappa * &self.g * k2)
    }

    /// `f = rho h^3/12 w^2 - D (1 - nu)/2 k^2 - b^2 kappa h G`.
    pub fn f(&self) -> MultiPoly {
        self.rotary()
            - &self.d * self.half_one_minus_nu() * v("k").pow(2)
            - v(COUPLING).pow(2) * self.shear()
    }

    /// `g = rho h^3/12 w^2 - D k^2 - b^2 kappa h G`.
    pub fn g_fn(&self) -> MultiPoly {
        self.rotary() - &self.d * v("k").pow(2) - v(COUPLING).pow(2) * self.shear()
    }

    /// `A = (rho h^3/12 w^2 - D k^2)(rho w^2 - kappa G k^2) - b^2 kappa G rho h w^2`.
    pub fn a(&self) -> MultiPoly {
        let k2 = v("k").pow(2);
        (self.rotary() - &self.d * &k2) * (&self.rho * w().pow(2) - &self.kappa * &self.g * &k2)
            - v(COUPLING).pow(2) * &self.kappa * &self.g * &self.rho * &self.h * w().pow(2)
    }
}

/// `B_b` in `(kx, ky, w, b)`.
pub fn mindlin_full_matrix(c: &MindlinCoeffs) -> ComplexMatrix {
    let (kx, ky) = (v("kx"), v("ky"));
    let b = v(COUPLING);
    let q = c.rotary() - b.pow(2) * c.shear();
    let hn = c.half_one_minus_nu();
    let a11 = &q - &c.d * (&hn * kx.pow(2) + ky.pow(2));
    let a22 = &q - &c.d * (&hn * ky.pow(2) + kx.pow(2));
    let a12 = -(&c.d * (MultiPoly::one() + &c.nu).scale(&rat(1, 2)) * &kx * &ky);
    let sy = &b * c.shear() * &ky;
    let sx = &b * c.shear() * &kx;
    let k2 = kx.pow(2) + ky.pow(2);
    let r = ComplexPoly::real;
    let i = ComplexPoly::imag;
    Matrix::from_rows(vec![
        vec![r(a11), r(a12.clone()), i(-&sy)],
        vec![r(a12), r(a22), i(-&sx)],
        vec![i(sy), i(sx), r(c.w_entry(&k2))],
    ])
    .expect("square")
}

/// Block-diagonal `C_b` in the radial variables `(k, w, b)`.
pub fn mindlin_c_matrix(c: &MindlinCoeffs) -> ComplexMatrix {
    let k = v("k");
    let s = v(COUPLING) * c.shear() * &k;
    let r = ComplexPoly::real;
    let z = ComplexPoly::zero;
    Matrix::from_rows(vec![
        vec![r(c.w_entry(&k.pow(2))), ComplexPoly::imag(s.clone()), z()],
        vec![ComplexPoly::imag(-s), r(c.g_fn()), z()],
        vec![z(), z(), r(c.f())],
    ])
    .expect("square")
}

/// The `(w, longitudinal)` block as a coupled system in `b`.
pub fn mindlin_reduced_system(c: &MindlinCoeffs) -> CoupledSystem<ComplexPoly> {
    let k = v("k");
    let b = v(COUPLING);
    let s = &b * c.shear() * &k;
    let lambda2 = c.rotary() - &c.d * k.pow(2);
    let coupling = Matrix::from_rows(vec![
        vec![ComplexPoly::zero(), ComplexPoly::imag(s.clone())],
        vec![
            ComplexPoly::imag(-s),
            ComplexPoly::real(-(b.pow(2) * c.shear())),
        ],
    ])
    .expect("square");
    CoupledSystem::new(
        Matrix::diag(vec![ComplexPoly::real(c.w_entry(&k.pow(2)))]),
        Matrix::diag(vec![ComplexPoly::real(lambda2)]),
        coupling,
        COUPLING,
    )
    .expect("dimensions match")
}

/// `(f, A)` with `det C_b = h f A`.
pub fn mindlin_factorized(c: &MindlinCoeffs) -> (MultiPoly, MultiPoly) {
    (c.f(), c.a())
}

/// Orthogonal `T_k` with columns `(0,0,1)`, `(ky,kx,0)/k`, `(-kx,ky,0)/k`.
pub fn t_matrix(kx: f64, ky: f64) -> Result<[[f64; 3]; 3], ModelError> {
    let k = kx.hypot(ky);
    if k == 0.0 {
        return Err(ModelError::ZeroWavenumber);
    }
    Ok([
        [0.0, ky / k, -kx / k],
        [0.0, kx / k, ky / k],
        [1.0, 0.0, 0.0],
    ])
}

/// `T_k` and `C_b` at a fixed wavevector; `C_b` is left in `(w, b)`.
pub fn mindlin_block_diag(
    c: &MindlinCoeffs,
    kx: f64,
    ky: f64,
) -> Result<([[f64; 3]; 3], ComplexMatrix), ModelError> {
    let t = t_matrix(kx, ky)?;
    let k = Rational::from_float(kx.hypot(ky)).ok_or(ModelError::ZeroWavenumber)?;
    let kc = MultiPoly::constant(k);
    let cb = mindlin_c_matrix(c).map(|e| e.substitute("k", &kc));
    Ok((t, cb))
}

/// `lambda = nu E / ((1 + nu)(1 - 2 nu))`.
pub fn lame_lambda(e: &Rational, nu: &Rational) -> Rational {
    let one = Rational::one();
    nu * e / ((&one + nu) * (&one - nu * Rational::from_integer(2.into())))
}

/// `mu = G = E / (2 (1 + nu))`.
pub fn shear_modulus(e: &Rational, nu: &Rational) -> Rational {
    e / (Rational::from_integer(2.into()) * (Rational::one() + nu))
}

/// Plane-stress `lambda' = 2 mu lambda / (lambda + 2 mu)`.
pub fn plane_stress_lambda(e: &Rational, nu: &Rational) -> Rational {
    let l = lame_lambda(e, nu);
    let mu = shear_modulus(e, nu);
    let two = Rational::from_integer(2.into());
    &two * &mu * &l / (&l + &two * &mu)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveSpeeds {
    pub c_l: f64,
    pub c_t: f64,
    pub c_p: f64,
}

/// Longitudinal, transverse and plate speeds from `E`, `nu`, `rho`.
pub fn wave_speeds(e: f64, nu: f64, rho: f64) -> Result<WaveSpeeds, ModelError> {
    if !(rho > 0.0) {
        return Err(ModelError::NonPositive("rho"));
    }
    if !(e > 0.0) {
        return Err(ModelError::NonPositive("E"));
    }
    if nu == 0.5 {
        return Err(ModelError::Incompressible);
    }
    if !(nu > -1.0 && nu < 0.5) {
        return Err(ModelError::Poisson(nu));
    }
    let lambda = nu * e / ((1.0 + nu) * (1.0 - 2.0 * nu));
    let mu = e / (2.0 * (1.0 + nu));
    Ok(WaveSpeeds {
        c_l: ((lambda + 2.0 * mu) / rho).sqrt(),
        c_t: (mu / rho).sqrt(),
        c_p: (e / (rho * (1.0 - nu * nu))).sqrt(),
    })
}

/// `(h^2 k^2 / 12)(1 - c^2/(kappa c_T^2))(c_P^2/c^2 - 1) - b^2`.
pub fn velocity_residual_a(p: &MindlinParams, c: f64, k: f64) -> Result<f64, ModelError> {
    if c == 0.0 {
        return Err(ModelError::ZeroSpeed);
    }
    if k == 0.0 {
        return Err(ModelError::ZeroWavenumber);
    }
    let h = to_f64(&p.h);
    let kappa = to_f64(&p.kappa);
    let ct2 = to_f64(&p.ct_squared());
    let cp2 = to_f64(&p.cp_squared());
    let b = to_f64(&p.b);
    let c2 = c * c;
    Ok(h * h * k * k / 12.0 * (1.0 - c2 / (kappa * ct2)) * (cp2 / c2 - 1.0) - b * b)
}

/// `c_T sqrt(1 + 12 kappa b^2 / (h^2 k^2))`.
pub fn f_branch_speed(p: &MindlinParams, k: f64) -> Result<f64, ModelError> {
    if k == 0.0 {
        return Err(ModelError::ZeroWavenumber);
    }
    let (h, kappa, b) = (to_f64(&p.h), to_f64(&p.kappa), to_f64(&p.b));
    Ok(to_f64(&p.ct_squared()).sqrt() * (1.0 + 12.0 * kappa * b * b / (h * h * k * k)).sqrt())
}

/// Large-`k` form `c_T (1 + 6 kappa b^2 / (h^2 k^2))`.
pub fn f_branch_speed_asymptotic(p: &MindlinParams, k: f64) -> Result<f64, ModelError> {
    if k == 0.0 {
        return Err(ModelError::ZeroWavenumber);
    }
    let (h, kappa, b) = (to_f64(&p.h), to_f64(&p.kappa), to_f64(&p.b));
    Ok(to_f64(&p.ct_squared()).sqrt() * (1.0 + 6.0 * kappa * b * b / (h * h * k * k)))
}
