use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num::complex::Complex64;
use num::{One, Signed, Zero};

use super::rational::{exact_sqrt, format_rational, to_f64, Rational};

/// Field-like values a polynomial can be evaluated in.
pub trait Scalar: Clone + fmt::Debug + Zero + One {
    fn from_rational(r: &Rational) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    /// Magnitude as a float, used for tolerance checks.
    fn magnitude(&self) -> f64;
    /// Real part as a float.
    fn real_f64(&self) -> f64;

    fn powu(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn real_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        to_f64(&self.abs())
    }
    fn real_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for Complex64 {
    fn from_rational(r: &Rational) -> Self {
        Complex64::new(to_f64(r), 0.0)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn real_f64(&self) -> f64 {
        self.re
    }
}

/// A coefficient that stays exact until an irrational operation forces a float.
#[derive(Clone, Debug, PartialEq)]
pub enum Num {
    Exact(Rational),
    Approx(f64),
}

impl Num {
    pub fn to_f64(&self) -> f64 {
        match self {
            Num::Exact(r) => to_f64(r),
            Num::Approx(x) => *x,
        }
    }

    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Num::Exact(r) => Some(r),
            Num::Approx(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Num::Exact(_))
    }

    /// Exact when the argument is a rational square. Negative input gives NaN.
    pub fn sqrt(&self) -> Num {
        match self {
            Num::Exact(r) => match exact_sqrt(r) {
                Some(s) => Num::Exact(s),
                None => Num::Approx(to_f64(r).sqrt()),
            },
            Num::Approx(x) => Num::Approx(x.sqrt()),
        }
    }

    pub fn abs(&self) -> Num {
        match self {
            Num::Exact(r) => Num::Exact(r.abs()),
            Num::Approx(x) => Num::Approx(x.abs()),
        }
    }

    fn binop(
        &self,
        o: &Num,
        exact: impl Fn(&Rational, &Rational) -> Rational,
        approx: impl Fn(f64, f64) -> f64,
    ) -> Num {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) => Num::Exact(exact(a, b)),
            _ => Num::Approx(approx(self.to_f64(), o.to_f64())),
        }
    }

    pub fn div(&self, o: &Num) -> Num {
        match (self, o) {
            (Num::Exact(a), Num::Exact(b)) if !b.is_zero() => Num::Exact(a / b),
            _ => Num::Approx(self.to_f64() / o.to_f64()),
        }
    }
}

impl Zero for Num {
    fn zero() -> Self {
        Num::Exact(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        match self {
            Num::Exact(r) => r.is_zero(),
            Num::Approx(x) => *x == 0.0,
        }
    }
}

impl One for Num {
    fn one() -> Self {
        Num::Exact(Rational::one())
    }
}

impl From<Rational> for Num {
    fn from(r: Rational) -> Self {
        Num::Exact(r)
    }
}

impl From<f64> for Num {
    fn from(x: f64) -> Self {
        Num::Approx(x)
    }
}

impl fmt::Display for Num {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Num::Exact(r) => write!(f, "{}", format_rational(r)),
            Num::Approx(x) => write!(f, "{x:.17e}"),
        }
    }
}

impl Scalar for Num {
    fn from_rational(r: &Rational) -> Self {
        Num::Exact(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a + b, |a, b| a + b)
    }
    fn minus(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a - b, |a, b| a - b)
    }
    fn times(&self, o: &Self) -> Self {
        self.binop(o, |a, b| a * b, |a, b| a * b)
    }
    fn negate(&self) -> Self {
        match self {
            Num::Exact(r) => Num::Exact(-r),
            Num::Approx(x) => Num::Approx(-x),
        }
    }
    fn magnitude(&self) -> f64 {
        self.to_f64().abs()
    }
    fn real_f64(&self) -> f64 {
        self.to_f64()
    }
}

macro_rules! num_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for Num {
            type Output = Num;
            fn $m(self, o: Num) -> Num {
                Num::$f(&self, &o)
            }
        }
        impl<'a> $tr<&'a Num> for &'a Num {
            type Output = Num;
            fn $m(self, o: &Num) -> Num {
                Num::$f(self, o)
            }
        }
    };
}

num_op!(Add, add, add_ref);
num_op!(Sub, sub, sub_ref);
num_op!(Mul, mul, mul_ref);
num_op!(Div, div, div);

impl Num {
    fn add_ref(&self, o: &Num) -> Num {
        self.plus(o)
    }
    fn sub_ref(&self, o: &Num) -> Num {
        self.minus(o)
    }
    fn mul_ref(&self, o: &Num) -> Num {
        self.times(o)
    }
}

impl Neg for Num {
    type Output = Num;
    fn neg(self) -> Num {
        self.negate()
    }
}
