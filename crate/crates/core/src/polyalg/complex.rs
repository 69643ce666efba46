use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::complex::Complex64;

use super::error::PolyError;
use super::multipoly::MultiPoly;
use super::rational::Rational;

/// Name of the formal imaginary unit in rendered output.
pub const IMAG_UNIT: &str = "I";

/// Polynomial with Gaussian-rational coefficients, stored as `re + i*im`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ComplexPoly {
    pub re: MultiPoly,
    pub im: MultiPoly,
}

impl ComplexPoly {
    pub fn new(re: MultiPoly, im: MultiPoly) -> Self {
        ComplexPoly { re, im }
    }

    pub fn real(re: MultiPoly) -> Self {
        ComplexPoly {
            re,
            im: MultiPoly::zero(),
        }
    }

    pub fn imag(im: MultiPoly) -> Self {
        ComplexPoly {
            re: MultiPoly::zero(),
            im,
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(MultiPoly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    pub fn conj(&self) -> Self {
        ComplexPoly {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// Multiplies by `i^n`.
    pub fn times_i_pow(&self, n: u32) -> Self {
        match n % 4 {
            0 => self.clone(),
            1 => ComplexPoly {
                re: -&self.im,
                im: self.re.clone(),
            },
            2 => -self,
            _ => ComplexPoly {
                re: self.im.clone(),
                im: -&self.re,
            },
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ComplexPoly {
            re: self.re.scale(s),
            im: self.im.scale(s),
        }
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        ComplexPoly {
            re: f(&self.re),
            im: f(&self.im),
        }
    }

    pub fn substitute(&self, name: &str, value: &MultiPoly) -> Self {
        self.map(|p| p.substitute(name, value))
    }

    pub fn contains_var(&self, name: &str) -> bool {
        self.re.contains_var(name) || self.im.contains_var(name)
    }

    pub fn eval(&self, values: &HashMap<String, f64>) -> Result<Complex64, PolyError> {
        let re = self.re.eval(values)?;
        let im = self.im.eval(values)?;
        Ok(Complex64::new(re, im))
    }

    /// Evaluates with complex variable values.
    pub fn eval_complex(
        &self,
        values: &HashMap<String, Complex64>,
    ) -> Result<Complex64, PolyError> {
        let f = |v: &str| values.get(v).copied();
        let re: Complex64 = self.re.eval_with(f)?;
        let im: Complex64 = self.im.eval_with(f)?;
        Ok(re + Complex64::new(0.0, 1.0) * im)
    }

    /// `re + I*im` as one polynomial with the formal unit `I`.
    pub fn to_formal(&self) -> MultiPoly {
        &self.re + MultiPoly::var(IMAG_UNIT) * &self.im
    }

    /// Splits a polynomial in `I` with `I^2 = -1`.
    pub fn from_formal(p: &MultiPoly) -> Self {
        let mut out = ComplexPoly::zero();
        for (j, c) in p.coefficients_in(IMAG_UNIT).into_iter().enumerate() {
            out = out + ComplexPoly::real(c).times_i_pow(j as u32);
        }
        out
    }
}

impl From<MultiPoly> for ComplexPoly {
    fn from(p: MultiPoly) -> Self {
        ComplexPoly::real(p)
    }
}

impl fmt::Display for ComplexPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formal())
    }
}

impl std::str::FromStr for ComplexPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let p: MultiPoly = s.parse()?;
        Ok(ComplexPoly::from_formal(&p))
    }
}

impl Add<&ComplexPoly> for &ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, o: &ComplexPoly) -> ComplexPoly {
        ComplexPoly {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl Sub<&ComplexPoly> for &ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, o: &ComplexPoly) -> ComplexPoly {
        ComplexPoly {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl Mul<&ComplexPoly> for &ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, o: &ComplexPoly) -> ComplexPoly {
        if self.is_real() && o.is_real() {
            return ComplexPoly::real(&self.re * &o.re);
        }
        ComplexPoly {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

impl Add for ComplexPoly {
    type Output = ComplexPoly;
    fn add(self, o: ComplexPoly) -> ComplexPoly {
        &self + &o
    }
}

impl Sub for ComplexPoly {
    type Output = ComplexPoly;
    fn sub(self, o: ComplexPoly) -> ComplexPoly {
        &self - &o
    }
}

impl Mul for ComplexPoly {
    type Output = ComplexPoly;
    fn mul(self, o: ComplexPoly) -> ComplexPoly {
        &self * &o
    }
}

impl Neg for &ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        ComplexPoly {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for ComplexPoly {
    type Output = ComplexPoly;
    fn neg(self) -> ComplexPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formal_roundtrip() {
        let z = ComplexPoly::new("x^2 + 1".parse().unwrap(), "-3*x".parse().unwrap());
        let s = z.to_string();
        assert_eq!(s.parse::<ComplexPoly>().unwrap(), z);
        let i = ComplexPoly::imag(MultiPoly::one());
        assert_eq!(&i * &i, -ComplexPoly::one());
        assert_eq!(z.times_i_pow(4), z);
        assert_eq!(z.times_i_pow(2), -&z);
    }
}
