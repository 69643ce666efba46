//! Two coupled oscillators with a detuning parameter `p` in place of a wavenumber.

use std::io::Write;

use num::{Signed, Zero};

use crate::branches::BranchTrace;
use crate::lagrangian::OMEGA;
use crate::matdet::{CoupledSystem, Matrix, RationalMatrix};
use crate::models::COUPLING;
use crate::polyalg::rational::{rat, rationalize, to_f64};
use crate::polyalg::{MultiPoly, Num, Rational};

/// Soft bound on `|p|`.
pub fn p_bound() -> Rational {
    rat(1, 5)
}

/// Default sweep range and size.
pub const P_RANGE: (f64, f64) = (-0.05, 0.23);
pub const P_STEPS: usize = 541;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MechError {
    #[error("parameter `{0}` must be positive")]
    NonPositive(&'static str),
    #[error("coupling amplitude must be nonnegative")]
    NegativeCoupling,
    #[error("|p| = {0} exceeds the bound {1}")]
    OutOfRange(f64, f64),
    #[error("effective stiffness of oscillator {0} is not positive")]
    Stiffness(usize),
    #[error("no transversal crossing: detuning rates are equal")]
    NoCrossing,
    #[error("grid is empty")]
    EmptyGrid,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OscillatorPair {
    pub m1: Rational,
    pub m2: Rational,
    pub kappa1: Rational,
    pub kappa2: Rational,
    pub kappa: Rational,
    pub alpha1: Rational,
    pub alpha2: Rational,
}

impl OscillatorPair {
    /// `m1 = m2 = 1, kappa1 = 1, kappa2 = 6/5, kappa = 1, alpha1 = 1, alpha2 = -1`.
    pub fn reference() -> Self {
        let one = Rational::from_integer(1.into());
        OscillatorPair {
            m1: one.clone(),
            m2: one.clone(),
            kappa1: one.clone(),
            kappa2: rat(6, 5),
            kappa: one.clone(),
            alpha1: one.clone(),
            alpha2: -one,
        }
    }

    pub fn validate(&self) -> Result<(), MechError> {
        for (name, v) in [
            ("m1", &self.m1),
            ("m2", &self.m2),
            ("kappa1", &self.kappa1),
            ("kappa2", &self.kappa2),
            ("kappa", &self.kappa),
        ] {
            if !v.is_positive() {
                return Err(MechError::NonPositive(name));
            }
        }
        Ok(())
    }

    /// `b kappa / sqrt(m1 m2)`, the half-splitting at the crossing.
    pub fn split(&self, b: &Rational) -> Num {
        Num::Exact(b * &self.kappa) / Num::Exact(&self.m1 * &self.m2).sqrt()
    }
}

/// Rejects `|p|` above `bound`.
pub fn check_p(p: &Rational, bound: &Rational) -> Result<(), MechError> {
    if p.abs() > *bound {
        return Err(MechError::OutOfRange(to_f64(p), to_f64(bound)));
    }
    Ok(())
}

/// Stiffness matrix of the full Lagrangian, springs `kappa_j - b kappa` plus
/// `p alpha_j kappa_j` and the relative spring `b kappa`.
pub fn stiffness_matrix(o: &OscillatorPair, p: &Rational, b: &Rational) -> RationalMatrix {
    let bk = b * &o.kappa;
    let diag = |kj: &Rational, aj: &Rational| (kj - &bk) + p * aj * kj + &bk;
    Matrix::from_rows(vec![
        vec![diag(&o.kappa1, &o.alpha1), -bk.clone()],
        vec![-bk.clone(), diag(&o.kappa2, &o.alpha2)],
    ])
    .expect("square")
}

/// `(1 + p alpha_j) kappa_j`, read off the stiffness diagonal.
pub fn effective_stiffness(
    o: &OscillatorPair,
    p: &Rational,
) -> Result<(Rational, Rational), MechError> {
    o.validate()?;
    let k = stiffness_matrix(o, p, &Rational::zero());
    let (k1, k2) = (k.get(0, 0).clone(), k.get(1, 1).clone());
    if !k1.is_positive() {
        return Err(MechError::Stiffness(1));
    }
    if !k2.is_positive() {
        return Err(MechError::Stiffness(2));
    }
    Ok((k1, k2))
}

/// Squared partial frequencies `(1 + p alpha_j) kappa_j / m_j`.
pub fn partial_freqs(o: &OscillatorPair, p: &Rational) -> Result<(Rational, Rational), MechError> {
    let (k1, k2) = effective_stiffness(o, p)?;
    Ok((k1 / &o.m1, k2 / &o.m2))
}

/// `(omega_-^2, omega_+^2)`.
pub fn eigenfreqs(o: &OscillatorPair, p: &Rational, b: &Rational) -> Result<(Num, Num), MechError> {
    if b.is_negative() {
        return Err(MechError::NegativeCoupling);
    }
    let (w1, w2) = partial_freqs(o, p)?;
    let mean = Num::Exact((&w1 + &w2) / Rational::from_integer(2.into()));
    let half = (&w1 - &w2) / Rational::from_integer(2.into());
    let c = b * b * &o.kappa * &o.kappa / (&o.m1 * &o.m2);
    let root = Num::Exact(&half * &half + c).sqrt();
    Ok((mean.clone() - root.clone(), mean + root))
}

/// `p*` where the partial frequencies coincide.
pub fn crossing_param(o: &OscillatorPair) -> Result<Rational, MechError> {
    o.validate()?;
    let r1 = &o.kappa1 / &o.m1;
    let r2 = &o.kappa2 / &o.m2;
    let den = &o.alpha1 * &r1 - &o.alpha2 * &r2;
    if den.is_zero() {
        return Err(MechError::NoCrossing);
    }
    Ok((r2 - r1) / den)
}

/// Mass-normalized characteristic matrix in `(w, b)` at fixed `p`.
pub fn characteristic_system(
    o: &OscillatorPair,
    p: &Rational,
) -> Result<CoupledSystem<MultiPoly>, MechError> {
    let (w1, w2) = partial_freqs(o, p)?;
    let w2v = MultiPoly::var(OMEGA).pow(2);
    let b = MultiPoly::var(COUPLING);
    let c1 = b.scale(&(&o.kappa / &o.m1));
    let c2 = b.scale(&(&o.kappa / &o.m2));
    Ok(CoupledSystem::new(
        Matrix::diag(vec![&w2v - MultiPoly::constant(w1)]),
        Matrix::diag(vec![&w2v - MultiPoly::constant(w2)]),
        Matrix::from_rows(vec![
            vec![MultiPoly::zero(), c1],
            vec![c2, MultiPoly::zero()],
        ])
        .expect("square"),
        COUPLING,
    )
    .expect("dimensions match"))
}

/// `n` evenly spaced points from `lo` to `hi` inclusive.
pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Branches `omega_-` (id 0) and `omega_+` (id 1) over a `p` grid, per `b`.
pub fn sweep(
    o: &OscillatorPair,
    grid: &[f64],
    bs: &[f64],
    bound: f64,
) -> Result<Vec<BranchTrace>, MechError> {
    if grid.is_empty() {
        return Err(MechError::EmptyGrid);
    }
    o.validate()?;
    let bound_r = rationalize(bound, 1e-15).ok_or(MechError::OutOfRange(bound, bound))?;
    let mut out = Vec::new();
    for &b in bs {
        let br = rationalize(b, 1e-15).ok_or(MechError::NegativeCoupling)?;
        let mut lo = BranchTrace {
            id: 0,
            samples: Vec::new(),
            model: "mech".into(),
            b,
        };
        let mut hi = BranchTrace {
            id: 1,
            samples: Vec::new(),
            model: "mech".into(),
            b,
        };
        for &p in grid {
            let pr = rationalize(p, 1e-15).ok_or(MechError::OutOfRange(p, bound))?;
            check_p(&pr, &bound_r)?;
            let (m, pl) = eigenfreqs(o, &pr, &br)?;
            lo.samples.push((p, m.to_f64().sqrt()));
            hi.samples.push((p, pl.to_f64().sqrt()));
        }
        out.push(lo);
        out.push(hi);
    }
    Ok(out)
}

/// Grid point of smallest `omega_+^2 - omega_-^2` for one `b` of a sweep.
pub fn min_gap(traces: &[BranchTrace], b: f64) -> Option<(f64, f64)> {
    let lo = traces.iter().find(|t| t.b == b && t.id == 0)?;
    let hi = traces.iter().find(|t| t.b == b && t.id == 1)?;
    lo.samples
        .iter()
        .zip(&hi.samples)
        .map(|((p, a), (_, c))| (*p, c * c - a * a))
        .min_by(|x, y| x.1.total_cmp(&y.1))
}

/// CSV `p,omega,branch,b` with branch `minus` or `plus`.
pub fn write_csv<W: Write>(traces: &[BranchTrace], mut out: W) -> std::io::Result<()> {
    writeln!(out, "p,omega,branch,b")?;
    for t in traces {
        let name = if t.id == 0 { "minus" } else { "plus" };
        for (p, w) in &t.samples {
            writeln!(out, "{:.16e},{:.16e},{},{}", p, w, name, t.b)?;
        }
    }
    Ok(())
}
