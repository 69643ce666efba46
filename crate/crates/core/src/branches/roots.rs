//! Real roots of univariate rational polynomials: Yun squarefree split,
//! Sturm isolation, exact-sign bisection.

use num::{One, Signed, Zero};

use super::BranchError;
use crate::polyalg::rational::to_f64;
use crate::polyalg::{MultiPoly, Rational};

/// A real root and its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Root {
    pub value: f64,
    pub multiplicity: usize,
}

/// Coefficients in ascending order, no trailing zeros.
type UPoly = Vec<Rational>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deriv(p: &[Rational]) -> UPoly {
    trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from_integer((i as i64).into()))
            .collect(),
    )
}

fn sub(a: &[Rational], b: &[Rational]) -> UPoly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z))
            .collect(),
    )
}

fn divrem(a: &[Rational], b: &[Rational]) -> (UPoly, UPoly) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bc;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn monic(p: UPoly) -> UPoly {
    let lead = p.last().cloned().unwrap_or_else(Rational::one);
    p.into_iter().map(|c| c / &lead).collect()
}

fn gcd(a: &[Rational], b: &[Rational]) -> UPoly {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b);
        a = b;
        b = r;
    }
    monic(a)
}

fn exact_div(a: &[Rational], b: &[Rational]) -> UPoly {
    divrem(a, b).0
}

/// Squarefree factors `(a_i, i)` with `p = c * prod a_i^i`.
fn yun(p: &[Rational]) -> Vec<(UPoly, usize)> {
    let dp = deriv(p);
    let a0 = gcd(p, &dp);
    let mut b = exact_div(p, &a0);
    let c = exact_div(&dp, &a0);
    let mut d = sub(&c, &deriv(&b));
    let mut out = Vec::new();
    let mut i = 1;
    while b.len() > 1 {
        let a = gcd(&b, &d);
        b = exact_div(&b, &a);
        let c = exact_div(&d, &a);
        d = sub(&c, &deriv(&b));
        if a.len() > 1 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

fn sturm_chain(p: &[Rational]) -> Vec<UPoly> {
    let mut chain = vec![p.to_vec(), deriv(p)];
    while chain.last().unwrap().len() > 1 {
        let n = chain.len();
        let (_, r) = divrem(&chain[n - 2], &chain[n - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

fn variations(chain: &[(UPoly, Vec<f64>)], x: &Rational) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|(q, qf)| fast_sign(q, qf, x))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Cauchy bound: every root lies in `(-B, B)`.
fn root_bound(p: &[Rational]) -> Rational {
    let lead = p.last().unwrap().abs();
    let m = p[..p.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    m + Rational::one()
}

fn dyadic_mid(lo: &Rational, hi: &Rational) -> Rational {
    let m = (to_f64(lo) + to_f64(hi)) / 2.0;
    match Rational::from_float(m) {
        Some(r) if &r > lo && &r < hi => r,
        _ => (lo + hi) / Rational::from_integer(2.into()),
    }
}

/// Isolating intervals `(lo, hi]` each holding one root of a squarefree `p`.
fn isolate(
    chain: &[(UPoly, Vec<f64>)],
    lo: Rational,
    hi: Rational,
    out: &mut Vec<(Rational, Rational)>,
) {
    let mut stack = vec![(lo, hi)];
    while let Some((lo, hi)) = stack.pop() {
        let n = variations(chain, &lo) - variations(chain, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = dyadic_mid(&lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
}

/// Sign of `p(x)`: float Horner when its rounding bound clears zero, exact otherwise.
fn fast_sign(p: &[Rational], pf: &[f64], x: &Rational) -> i8 {
    let xf = to_f64(x);
    let (mut v, mut m) = (0.0f64, 0.0f64);
    for c in pf.iter().rev() {
        v = v * xf + c;
        m = m * xf.abs() + c.abs();
    }
    let bound = 4.0 * (pf.len() as f64 + 2.0) * f64::EPSILON * m;
    if v.is_finite() && v.abs() > bound && Rational::from_float(xf).as_ref() == Some(x) {
        if v > 0.0 {
            1
        } else {
            -1
        }
    } else {
        sign(&eval(p, x))
    }
}

fn refine(p: &[Rational], mut lo: Rational, mut hi: Rational, tol: f64) -> f64 {
    let pf: Vec<f64> = p.iter().map(to_f64).collect();
    let s_hi = sign(&eval(p, &hi));
    if s_hi == 0 {
        return to_f64(&hi);
    }
    // Relative precision as well, so that small roots keep their digits.
    loop {
        let width = to_f64(&(&hi - &lo));
        let mag = to_f64(&lo).abs().min(to_f64(&hi).abs());
        if width <= tol && width <= tol * mag {
            break;
        }
        let mid = dyadic_mid(&lo, &hi);
        let s = fast_sign(p, &pf, &mid);
        if s == 0 {
            return to_f64(&mid);
        }
        if s == s_hi {
            hi = mid;
        } else {
            lo = mid;
        }
        if to_f64(&lo) == to_f64(&hi) {
            break;
        }
    }
    to_f64(&((lo + hi) / Rational::from_integer(2.into())))
}

/// Real roots of `sum c_i x^i`, sorted, each within `tol`.
pub fn real_roots_coeffs(coeffs: &[Rational], tol: f64) -> Result<Vec<Root>, BranchError> {
    if !(tol > 0.0) {
        return Err(BranchError::BadTolerance(tol));
    }
    let p = trim(coeffs.to_vec());
    if p.is_empty() {
        return Err(BranchError::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    for (factor, mult) in yun(&p) {
        let chain: Vec<(UPoly, Vec<f64>)> = sturm_chain(&factor)
            .into_iter()
            .map(|q| {
                let qf = q.iter().map(to_f64).collect();
                (q, qf)
            })
            .collect();
        let b = root_bound(&factor);
        let mut ivs = Vec::new();
        isolate(&chain, -b.clone(), b, &mut ivs);
        for (lo, hi) in ivs {
            roots.push(Root {
                value: refine(&factor, lo, hi, tol),
                multiplicity: mult,
            });
        }
    }
    roots.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(roots)
}

/// Real roots of a polynomial in the single variable `var`.
pub fn real_roots(p: &MultiPoly, var: &str, tol: f64) -> Result<Vec<Root>, BranchError> {
    let c = p.to_univariate(var)?;
    real_roots_coeffs(&c, tol)
}

/// Roots repeated according to multiplicity.
pub fn expand_roots(roots: &[Root]) -> Vec<f64> {
    roots
        .iter()
        .flat_map(|r| std::iter::repeat(r.value).take(r.multiplicity))
        .collect()
}
