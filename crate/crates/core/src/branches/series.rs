//! Small-`k` and small-`omega` expansions of the Mindlin relation `A = 0`.

use num::{One, Zero};

use super::BranchError;
use crate::models::MindlinParams;
use crate::polyalg::rational::{int, rat};
use crate::polyalg::{Num, Rational, TruncSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    /// `omega = c1 k^2 + c2 k^4 + c3 k^6`
    Lower,
    /// `omega = omega0 + d1 k^2 + d2 k^4`
    Upper,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesCoeffs {
    pub kind: SeriesKind,
    pub values: Vec<Num>,
    pub params: MindlinParams,
}

impl SeriesCoeffs {
    /// Branch value at `k`, as an exact rational when every coefficient is exact.
    pub fn eval_exact(&self, k: &Rational) -> Option<Rational> {
        let k2 = k * k;
        let mut acc = Rational::zero();
        let mut pow = match self.kind {
            SeriesKind::Lower => k2.clone(),
            SeriesKind::Upper => Rational::one(),
        };
        for c in &self.values {
            acc += c.as_exact()? * &pow;
            pow *= &k2;
        }
        Some(acc)
    }

    pub fn eval(&self, k: f64) -> f64 {
        let k2 = k * k;
        let sum = self
            .values
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * k2 + c.to_f64());
        match self.kind {
            SeriesKind::Lower => sum * k2,
            SeriesKind::Upper => sum,
        }
    }
}

fn q(r: &Rational) -> Num {
    Num::Exact(r.clone())
}

fn coupled(p: &MindlinParams) -> Result<(), BranchError> {
    p.validate()?;
    if p.b.is_zero() {
        return Err(BranchError::ZeroCoupling);
    }
    Ok(())
}

/// `c1, c2, c3` of the pinned branch through the origin.
pub fn lower_series(p: &MindlinParams) -> Result<SeriesCoeffs, BranchError> {
    coupled(p)?;
    let (d, rho, h, b) = (&p.d, &p.rho, &p.h, &p.b);
    let kg = &p.kappa * &p.g;
    let h3 = h.pow(3);
    let c1 = q(&(d / (rho * h))).sqrt() / q(b);
    let c2 = q(&(d / (rho * &h3))).sqrt()
        * q(&(-(int(12) * d + &kg * &h3) / (int(24) * &kg * b.pow(3))));
    let c3 = q(&(d / (rho * h.pow(5)))).sqrt()
        * q(&((int(4) * d + &kg * &h3) * (int(36) * d + &kg * &h3)
            / (int(384) * &kg * &kg * b.pow(5))));
    Ok(SeriesCoeffs {
        kind: SeriesKind::Lower,
        values: vec![c1, c2, c3],
        params: p.clone(),
    })
}

/// `omega0^2 = 12 b^2 kappa G / (rho h^2)`.
pub fn omega0_squared(p: &MindlinParams) -> Rational {
    int(12) * &p.b * &p.b * &p.kappa * &p.g / (&p.rho * &p.h * &p.h)
}

/// `omega0, d1, d2` of the lifted branch.
pub fn upper_series(p: &MindlinParams) -> Result<SeriesCoeffs, BranchError> {
    coupled(p)?;
    let (d, rho, h, b) = (&p.d, &p.rho, &p.h, &p.b);
    let kg = &p.kappa * &p.g;
    let h3 = h.pow(3);
    let w0 = q(&omega0_squared(p)).sqrt();
    let d1 = q(&(int(3) / (&kg * rho))).sqrt() * q(&((d + &kg * &h3 / int(12)) / (b * h * h)));
    let d2 = q(&(int(3) / (kg.pow(3) * rho))).sqrt()
        * q(
            &(-(int(144) * d * d + int(72) * d * &kg * &h3 + &kg * &kg * h3.pow(2))
                / (int(576) * b.pow(3) * &h3)),
        );
    Ok(SeriesCoeffs {
        kind: SeriesKind::Upper,
        values: vec![w0, d1, d2],
        params: p.clone(),
    })
}

/// `P`, `Q` and `R` of the quadratic in `S = k^2 / omega^2`.
pub fn pqr(p: &MindlinParams) -> (Rational, Rational, Num) {
    let kg = &p.kappa * &p.g;
    let a = &p.rho * p.h.pow(3) * &kg / int(12);
    let c = &p.rho * &p.d;
    let r = q(&(int(2) * &p.b * &kg)) * q(&(&p.d * &p.rho * &p.h)).sqrt();
    (&a + &c, a - c, r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SBranch {
    Plus,
    Minus,
}

/// Laurent series of `S_+` or `S_-` in `|omega|`, known below exponent `order`.
pub fn laurent_s(
    p: &MindlinParams,
    sign: SBranch,
    order: i64,
) -> Result<TruncSeries<Num>, BranchError> {
    coupled(p)?;
    if order < 0 {
        return Err(BranchError::BadOrder(order));
    }
    let (pp, qq, r) = pqr(p);
    let denom = q(&(int(2) * &p.kappa * &p.g * &p.d));
    let s = if sign == SBranch::Plus {
        Num::one()
    } else {
        -Num::one()
    };
    // exponents -1, 0, 1, ..., order - 1
    let len = (order + 1) as usize;
    let mut coeffs = vec![Num::zero(); len];
    if len > 1 {
        coeffs[1] = q(&pp) / denom.clone();
    }
    let q2 = q(&(&qq * &qq));
    let mut binom = Rational::one();
    let mut n = 0i64;
    loop {
        let e = 2 * n - 1;
        if e >= order {
            break;
        }
        // binom(1/2, n) Q^{2n} R^{1-2n}
        let mut term = Num::Exact(binom.clone()) * r.clone();
        for _ in 0..n {
            term = term * q2.clone() / (r.clone() * r.clone());
        }
        coeffs[(e + 1) as usize] = s.clone() * term / denom.clone();
        binom = binom * (rat(1, 2) - Rational::from_integer(n.into()))
            / Rational::from_integer((n + 1).into());
        n += 1;
    }
    Ok(TruncSeries::new(
        OMEGA_ABS,
        int(-1),
        int(1),
        coeffs,
        Some(Rational::from_integer(order.into())),
    ))
}

/// Variable name of the `|omega|` series.
pub const OMEGA_ABS: &str = "w";

/// `kappa G D S^2 - P S + rho^2 h^3 / 12 - b^2 kappa G rho h omega^{-2}`.
pub fn s_quadratic_residual(p: &MindlinParams, s: &TruncSeries<Num>) -> TruncSeries<Num> {
    let (pp, _, _) = pqr(p);
    let kgd = &p.kappa * &p.g * &p.d;
    let c0 = &p.rho * &p.rho * p.h.pow(3) / int(12);
    let cm2 = -(&p.b * &p.b * &p.kappa * &p.g * &p.rho * &p.h);
    let konst = TruncSeries::new(
        s.var(),
        int(-2),
        int(1),
        vec![q(&cm2), Num::zero(), q(&c0)],
        None,
    );
    s.mul(s).scale(&q(&kgd)).sub(&s.scale(&q(&pp))).add(&konst)
}

/// Numeric value of the same quadratic at a point `S` and `omega`.
pub fn s_quadratic_value(p: &MindlinParams, s: f64, omega: f64) -> f64 {
    let f = crate::polyalg::rational::to_f64;
    let (pp, _, _) = pqr(p);
    let kgd = f(&(&p.kappa * &p.g * &p.d));
    let c0 = f(&(&p.rho * &p.rho * p.h.pow(3) / int(12)));
    let c = f(&(&p.b * &p.b * &p.kappa * &p.g * &p.rho * &p.h));
    kgd * s * s - f(&pp) * s + c0 - c / (omega * omega)
}

/// Large-`k` slopes `sqrt(kappa G / rho)` and `sqrt(12 D / (rho h^3))`.
pub fn asymptotic_slopes(p: &MindlinParams) -> (Num, Num) {
    (
        q(&(&p.kappa * &p.g / &p.rho)).sqrt(),
        q(&(int(12) * &p.d / (&p.rho * p.h.pow(3)))).sqrt(),
    )
}

/// Roots of the `b`-free quadratic in `S`: `rho / (kappa G)` and `rho h^3 / (12 D)`.
pub fn s_infinity(p: &MindlinParams) -> (Rational, Rational) {
    (
        &p.rho / (&p.kappa * &p.g),
        &p.rho * p.h.pow(3) / (int(12) * &p.d),
    )
}
