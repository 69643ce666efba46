use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number used for every symbolic coefficient.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact conversion of a finite float.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Simplest rational within `rel * |x|` of a finite float, from the
/// continued-fraction convergents; `0.1` gives `1/10`.
pub fn rationalize(x: f64, rel: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let exact = Rational::from_float(x)?;
    if x == 0.0 {
        return Some(exact);
    }
    let tol = x.abs() * rel;
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rest = exact.clone();
    for _ in 0..64 {
        let a = rest.floor();
        let ai = a.to_integer();
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        let cand = Rational::new(h2.clone(), k2.clone());
        if (to_f64(&(&cand - &exact))).abs() <= tol {
            return Some(cand);
        }
        let frac = &rest - &a;
        if frac.is_zero() {
            return Some(cand);
        }
        rest = frac.recip();
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
    Some(exact)
}

/// Renders `p/q`, or `p` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a rational literal: {0:?}")]
pub struct RationalParseError(pub String);

fn parse_unsigned_decimal(s: &str) -> Option<Rational> {
    let (whole, frac) = match s.split_once('.') {
        Some((w, f)) => (w, f),
        None => (s, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{whole}{frac}");
    let n: BigInt = digits.parse().ok()?;
    let d = num::pow(BigInt::from(10), frac.len());
    Some(Rational::new(n, d))
}

/// Parses `-3`, `7/4`, `0.125` or `-1.5/2` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let err = || RationalParseError(s.to_string());
    let t = s.trim();
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let value = match body.split_once('/') {
        Some((n, d)) => {
            let n = parse_unsigned_decimal(n).ok_or_else(err)?;
            let d = parse_unsigned_decimal(d).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            n / d
        }
        None => parse_unsigned_decimal(body).ok_or_else(err)?,
    };
    Ok(if neg { -value } else { value })
}

/// Square root when `r` is the square of a rational.
pub fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

/// Gcd of two positive rationals: the largest `g` with `a/g` and `b/g` integral.
pub fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    use num::Integer;
    let a = a.abs();
    let b = b.abs();
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let num = (a.numer() * b.denom()).gcd(&(b.numer() * a.denom()));
    Rational::new(num, a.denom() * b.denom())
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}
