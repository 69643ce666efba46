//! Local model of two dispersion curves near a crossing point.

use std::collections::HashMap;

use crate::lagrangian::{FieldDeriv, QuadraticLagrangian, OMEGA};
use crate::polyalg::rational::rat;
use crate::polyalg::{MultiPoly, PolyError, Rational};

/// Default crossing tolerance, relative to the term magnitude at the point.
pub const CROSSING_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CrossPointError {
    #[error("non-normalizable crossing: a frequency derivative vanishes")]
    NonNormalizable(RawCoeffs),
    #[error("point is not on the zero set of G{0} (|G| = {1:e})")]
    NotOnCrossing(usize, f64),
    #[error("the two linear forms are parallel")]
    Degenerate,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// First-order data `G_j ~ g_jw d + g_jk kappa` and the coupling value `g_c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawCoeffs {
    pub g1w: f64,
    pub g1k: f64,
    pub g2w: f64,
    pub g2k: f64,
    pub gc: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossPointData {
    pub g1: f64,
    pub g2: f64,
    pub gamma: f64,
    pub g_gamma: f64,
    pub raw: RawCoeffs,
}

impl CrossPointData {
    /// Data already in normalized form (`g_jw = 1`).
    pub fn normalized(g1: f64, g2: f64, gamma: f64, g_gamma: f64) -> Self {
        CrossPointData {
            g1,
            g2,
            gamma,
            g_gamma,
            raw: RawCoeffs {
                g1w: 1.0,
                g1k: g1,
                g2w: 1.0,
                g2k: g2,
                gc: g_gamma,
            },
        }
    }

    /// `gamma g_c`, the right-hand side of the raw bilinear relation.
    pub fn coupling_raw(&self) -> f64 {
        self.gamma * self.raw.gc
    }

    /// `gamma g_gamma`.
    pub fn coupling(&self) -> f64 {
        self.gamma * self.g_gamma
    }
}

fn point(k0: f64, w0: f64) -> HashMap<String, f64> {
    [("k".to_string(), k0), (OMEGA.to_string(), w0)].into()
}

/// Linearizes `G1 G2 = gamma Gc` at a common zero `(w0, k0)` of `G1` and `G2`.
pub fn extract_crosspoint(
    g1: &MultiPoly,
    g2: &MultiPoly,
    gc: &MultiPoly,
    gamma: f64,
    w0: f64,
    k0: f64,
    tol: f64,
) -> Result<CrossPointData, CrossPointError> {
    let at = point(k0, w0);
    for (i, g) in [g1, g2].into_iter().enumerate() {
        let v = g.eval(&at)?;
        let scale = g.term_magnitude(&at)?;
        if v.abs() > tol * scale {
            return Err(CrossPointError::NotOnCrossing(i + 1, v.abs()));
        }
    }
    let d = |g: &MultiPoly, var: &str| -> Result<f64, PolyError> { g.derivative(var)?.eval(&at) };
    let raw = RawCoeffs {
        g1w: d(g1, OMEGA)?,
        g1k: d(g1, "k")?,
        g2w: d(g2, OMEGA)?,
        g2k: d(g2, "k")?,
        gc: gc.eval(&at)?,
    };
    if raw.g1w == 0.0 || raw.g2w == 0.0 {
        return Err(CrossPointError::NonNormalizable(raw));
    }
    Ok(CrossPointData {
        g1: raw.g1k / raw.g1w,
        g2: raw.g2k / raw.g2w,
        gamma,
        g_gamma: raw.gc / (raw.g1w * raw.g2w),
        raw,
    })
}

/// `(d', kappa') = ((l1 + l2)/2, (l1 - l2)/2)` with `l_j = g_jw d + g_jk kappa`.
pub fn normal_form(
    cp: &CrossPointData,
    delta: f64,
    kappa: f64,
) -> Result<(f64, f64), CrossPointError> {
    let r = &cp.raw;
    if r.g1w * r.g2k - r.g2w * r.g1k == 0.0 {
        return Err(CrossPointError::Degenerate);
    }
    let l1 = r.g1w * delta + r.g1k * kappa;
    let l2 = r.g2w * delta + r.g2k * kappa;
    Ok(((l1 + l2) / 2.0, (l1 - l2) / 2.0))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DeltaRoots {
    /// `(d_minus, d_plus)`, sorted.
    Real(f64, f64),
    /// Negative discriminant: no real branch at this `kappa`.
    Gap,
}

/// Roots in `d` of `(d + g1 kappa)(d + g2 kappa) = gamma g_gamma`.
pub fn solve_delta(cp: &CrossPointData, kappa: f64) -> DeltaRoots {
    let b = (cp.g1 + cp.g2) * kappa;
    let c = cp.g1 * cp.g2 * kappa * kappa - cp.coupling();
    let disc = (cp.g1 - cp.g2).powi(2) * kappa * kappa + 4.0 * cp.coupling();
    if disc < 0.0 {
        return DeltaRoots::Gap;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 {
        let h = disc.sqrt() / 2.0;
        (-b / 2.0 - h, -b / 2.0 + h)
    } else {
        (q, c / q)
    };
    DeltaRoots::Real(r1.min(r2), r1.max(r2))
}

/// Signed offset of `delta` from the nearer uncoupled line `d = -g_j kappa`.
pub fn deviation(cp: &CrossPointData, kappa: f64, delta: f64) -> f64 {
    let e1 = delta + cp.g1 * kappa;
    let e2 = delta + cp.g2 * kappa;
    if e1.abs() <= e2.abs() {
        e1
    } else {
        e2
    }
}

/// `G = A w^2 - 2 B w k - C k^2 - D`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadDispersion {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl QuadDispersion {
    pub fn poly(&self) -> MultiPoly {
        let w = MultiPoly::var(OMEGA);
        let k = MultiPoly::var("k");
        w.pow(2).scale(&self.a)
            - (&w * &k).scale(&(&self.b * Rational::from_integer(2.into())))
            - k.pow(2).scale(&self.c)
            - MultiPoly::constant(self.d.clone())
    }
}

/// Coefficients whose dispersion is `(w + g1 k)(w + g2 k) - gamma g_gamma`.
pub fn crosspoint_coeffs(
    g1: &Rational,
    g2: &Rational,
    gamma: &Rational,
    g_gamma: &Rational,
) -> QuadDispersion {
    QuadDispersion {
        a: Rational::from_integer(1.into()),
        b: -(g1 + g2) * rat(1, 2),
        c: -(g1 * g2),
        d: gamma * g_gamma,
    }
}

/// One-field Lagrangian `1/2 [A Q_t^2 + 2 B Q_t Q_x - C Q_x^2 - D Q^2]`.
pub fn crosspoint_lagrangian(q: &QuadDispersion) -> QuadraticLagrangian {
    let mut lag = QuadraticLagrangian::new(1, vec!["Q".to_string()]).expect("one field");
    let dt = FieldDeriv::new(0, vec![1, 0]);
    let dx = FieldDeriv::new(0, vec![0, 1]);
    let d0 = FieldDeriv::new(0, vec![0, 0]);
    let half = rat(1, 2);
    let c = |r: Rational| MultiPoly::constant(r);
    let terms = [
        (dt.clone(), dt.clone(), c(&q.a * &half)),
        (dt, dx.clone(), c(q.b.clone())),
        (dx.clone(), dx, c(-(&q.c * &half))),
        (d0.clone(), d0, c(-(&q.d * &half))),
    ];
    for (x, y, v) in terms {
        lag.add_term(x, y, &v).expect("valid derivative");
    }
    lag
}
