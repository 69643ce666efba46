use std::fmt;

use num::{One, Zero};

use crate::polyalg::{ComplexPoly, MultiPoly, Rational};

/// Commutative ring with unit, as needed by determinant algorithms.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// The rational value when the element is a constant.
    fn to_constant(&self) -> Option<Rational>;
    fn from_constant(c: Rational) -> Self;
}

/// Rings of polynomials, which know how to set a variable to zero.
pub trait PolyRing: Ring {
    fn contains_var(&self, var: &str) -> bool;
    fn at_zero(&self, var: &str) -> Self;
    /// Exact division by `var`.
    fn div_var(&self, var: &str) -> Option<Self>;
    fn var(name: &str) -> Self;
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_constant(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn from_constant(c: Rational) -> Self {
        c
    }
}

impl Ring for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_constant(&self) -> Option<Rational> {
        self.as_constant()
    }
    fn from_constant(c: Rational) -> Self {
        MultiPoly::constant(c)
    }
}

impl PolyRing for MultiPoly {
    fn contains_var(&self, var: &str) -> bool {
        MultiPoly::contains_var(self, var)
    }
    fn at_zero(&self, var: &str) -> Self {
        self.substitute(var, &MultiPoly::zero())
    }
    fn div_var(&self, var: &str) -> Option<Self> {
        if self.is_zero() {
            return Some(MultiPoly::zero());
        }
        MultiPoly::div_var(self, var).ok()
    }
    fn var(name: &str) -> Self {
        MultiPoly::var(name)
    }
}

impl Ring for ComplexPoly {
    fn zero() -> Self {
        ComplexPoly::zero()
    }
    fn one() -> Self {
        ComplexPoly::one()
    }
    fn is_zero(&self) -> bool {
        ComplexPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn to_constant(&self) -> Option<Rational> {
        if self.im.is_zero() {
            self.re.as_constant()
        } else {
            None
        }
    }
    fn from_constant(c: Rational) -> Self {
        ComplexPoly::real(MultiPoly::constant(c))
    }
}

impl PolyRing for ComplexPoly {
    fn contains_var(&self, var: &str) -> bool {
        ComplexPoly::contains_var(self, var)
    }
    fn at_zero(&self, var: &str) -> Self {
        self.substitute(var, &MultiPoly::zero())
    }
    fn div_var(&self, var: &str) -> Option<Self> {
        Some(ComplexPoly::new(
            PolyRing::div_var(&self.re, var)?,
            PolyRing::div_var(&self.im, var)?,
        ))
    }
    fn var(name: &str) -> Self {
        ComplexPoly::real(MultiPoly::var(name))
    }
}
