use num::{One, Signed, ToPrimitive, Zero};

use super::error::PolyError;
use super::multipoly::MultiPoly;
use super::rational::{is_integer, rational_gcd, to_f64, Rational};
use super::scalar::Scalar;

/// Truncated (Puiseux/Laurent) series `sum_n c_n x^(base + n*step)`.
///
/// `order` is the first exponent whose coefficient is unknown; `None` marks an
/// exact finite sum. Retained exponents are always below `order`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<T> {
    var: String,
    base: Rational,
    step: Rational,
    coeffs: Vec<T>,
    order: Option<Rational>,
}

impl<T: Scalar> TruncSeries<T> {
    pub fn new(
        var: &str,
        base: Rational,
        step: Rational,
        coeffs: Vec<T>,
        order: Option<Rational>,
    ) -> Self {
        assert!(step.is_positive(), "series step must be positive");
        let mut s = TruncSeries {
            var: var.to_string(),
            base,
            step,
            coeffs,
            order,
        };
        s.clip();
        s
    }

    /// `c * x^e`, exact.
    pub fn monomial(var: &str, c: T, e: Rational) -> Self {
        Self::new(var, e, Rational::one(), vec![c], None)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn step(&self) -> &Rational {
        &self.step
    }

    pub fn order(&self) -> Option<&Rational> {
        self.order.as_ref()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn exponent(&self, n: usize) -> Rational {
        &self.base + &self.step * Rational::from_integer(n.into())
    }

    /// `(exponent, coefficient)` pairs of the retained terms.
    pub fn terms(&self) -> impl Iterator<Item = (Rational, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(n, c)| (self.exponent(n), c))
    }

    /// Coefficient of `x^e`, zero if absent; `None` if `e` is at or beyond the order.
    pub fn coeff_at(&self, e: &Rational) -> Option<T> {
        if let Some(o) = &self.order {
            if e >= o {
                return None;
            }
        }
        let n = (e - &self.base) / &self.step;
        if !is_integer(&n) || n.is_negative() {
            return Some(T::zero());
        }
        let n = n.to_integer().to_usize()?;
        Some(self.coeffs.get(n).cloned().unwrap_or_else(T::zero))
    }

    fn clip(&mut self) {
        if let Some(o) = &self.order {
            while !self.coeffs.is_empty() && &self.exponent(self.coeffs.len() - 1) >= o {
                self.coeffs.pop();
            }
        }
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// Re-expresses the series on a finer lattice `new_base + n*new_step`.
    pub fn refine(&self, new_base: &Rational, new_step: &Rational) -> Result<Self, PolyError> {
        let shift = (&self.base - new_base) / new_step;
        let ratio = &self.step / new_step;
        if new_base > &self.base || !is_integer(&shift) || !is_integer(&ratio) {
            return Err(PolyError::Lattice);
        }
        let shift = shift.to_integer().to_usize().ok_or(PolyError::Lattice)?;
        let ratio = ratio.to_integer().to_usize().ok_or(PolyError::Lattice)?;
        let len = if self.coeffs.is_empty() {
            0
        } else {
            shift + (self.coeffs.len() - 1) * ratio + 1
        };
        let mut coeffs = vec![T::zero(); len];
        for (n, c) in self.coeffs.iter().enumerate() {
            coeffs[shift + n * ratio] = c.clone();
        }
        Ok(TruncSeries {
            var: self.var.clone(),
            base: new_base.clone(),
            step: new_step.clone(),
            coeffs,
            order: self.order.clone(),
        })
    }

    fn common_lattice(&self, o: &Self) -> (Rational, Rational) {
        let base = if self.base < o.base {
            self.base.clone()
        } else {
            o.base.clone()
        };
        let step = rational_gcd(&rational_gcd(&self.step, &o.step), &(&self.base - &o.base));
        (base, step)
    }

    fn min_order(a: Option<&Rational>, b: Option<&Rational>) -> Option<Rational> {
        match (a, b) {
            (Some(x), Some(y)) => Some(if x < y { x.clone() } else { y.clone() }),
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        assert_eq!(self.var, o.var, "series in different variables");
        let (base, step) = self.common_lattice(o);
        let a = self.refine(&base, &step).expect("common lattice");
        let b = o.refine(&base, &step).expect("common lattice");
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len)
            .map(|n| {
                let x = a.coeffs.get(n).cloned().unwrap_or_else(T::zero);
                let y = b.coeffs.get(n).cloned().unwrap_or_else(T::zero);
                if sign {
                    x.plus(&y)
                } else {
                    x.minus(&y)
                }
            })
            .collect();
        let order = Self::min_order(self.order.as_ref(), o.order.as_ref());
        Self::new(&self.var, base, step, coeffs, order)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn scale(&self, s: &T) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c.times(s)).collect();
        Self::new(
            &self.var,
            self.base.clone(),
            self.step.clone(),
            coeffs,
            self.order.clone(),
        )
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        Self::new(
            &self.var,
            &self.base + e,
            self.step.clone(),
            self.coeffs.clone(),
            self.order.as_ref().map(|o| o + e),
        )
    }

    /// Lowest exponent actually carried (the base when the series is empty).
    fn valuation(&self) -> Rational {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|n| self.exponent(n))
            .unwrap_or_else(|| self.order.clone().unwrap_or_else(|| self.base.clone()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.var, o.var, "series in different variables");
        let step = rational_gcd(&self.step, &o.step);
        let a = self.refine(&self.base, &step).expect("finer step");
        let b = o.refine(&o.base, &step).expect("finer step");
        let mut coeffs = vec![T::zero(); (a.coeffs.len() + b.coeffs.len()).saturating_sub(1)];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].plus(&x.times(y));
            }
        }
        // An unknown tail of one factor is multiplied by the other's lowest term.
        let o1 = self.order.as_ref().map(|x| x + o.valuation());
        let o2 = o.order.as_ref().map(|x| x + self.valuation());
        let order = Self::min_order(o1.as_ref(), o2.as_ref());
        Self::new(&self.var, &self.base + &o.base, step, coeffs, order)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::monomial(&self.var, T::one(), Rational::zero());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.terms()
            .map(|(e, c)| c.real_f64() * x.powf(to_f64(&e)))
            .sum()
    }

    /// True when every retained coefficient below `e` is at most `tol` in size.
    pub fn vanishes_below(&self, e: &Rational, tol: f64) -> bool {
        self.terms()
            .filter(|(x, _)| x < e)
            .all(|(_, c)| c.magnitude() <= tol)
    }
}

/// Substitutes the series `s` for `y_var` in the polynomial `p(y, x)`, where `x`
/// is the series variable. `p` may contain no other variables.
///
/// With `requested` set, fails unless every output exponent below it is fully
/// determined by the retained terms of `s`.
pub fn series_substitute<T: Scalar>(
    p: &MultiPoly,
    y_var: &str,
    s: &TruncSeries<T>,
    requested: Option<&Rational>,
) -> Result<TruncSeries<T>, PolyError> {
    let x_var = s.var().to_string();
    for v in p.used_vars() {
        if v != y_var && v != x_var {
            return Err(PolyError::UnknownVariable(v));
        }
    }
    let ycoeffs = p.coefficients_in(y_var);
    let mut acc = TruncSeries::new(&x_var, Rational::zero(), Rational::one(), Vec::new(), None);
    let mut spow = TruncSeries::monomial(&x_var, T::one(), Rational::zero());
    for (i, cy) in ycoeffs.iter().enumerate() {
        if i > 0 {
            spow = spow.mul(s);
        }
        if cy.is_zero() {
            continue;
        }
        for (j, cx) in cy.coefficients_in(&x_var).iter().enumerate() {
            let Some(c) = cx.as_constant() else {
                return Err(PolyError::UnknownVariable(cx.used_vars().join(",")));
            };
            if c.is_zero() {
                continue;
            }
            let term = spow
                .scale(&T::from_rational(&c))
                .shift(&Rational::from_integer(j.into()));
            acc = acc.add(&term);
        }
    }
    if let (Some(want), Some(have)) = (requested, acc.order()) {
        if want > have {
            return Err(PolyError::InsufficientOrder {
                achievable: have.clone(),
                requested: want.clone(),
            });
        }
    }
    if let Some(want) = requested {
        let mut out = acc;
        out.order = Some(match out.order.take() {
            Some(o) if &o < want => o,
            _ => want.clone(),
        });
        out.clip();
        return Ok(out);
    }
    Ok(acc)
}
