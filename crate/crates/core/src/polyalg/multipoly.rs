use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::error::PolyError;
use super::rational::{to_f64, Rational};
use super::scalar::Scalar;

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Variables are kept sorted; binary operations align operands on the union
/// of their variable lists, so polynomials over different variables mix freely.
#[derive(Clone, Debug, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn union_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    out.sort();
    out.dedup();
    out
}

impl MultiPoly {
    /// Builds a polynomial from variables (any order) and exponent tuples.
    /// Repeated exponent tuples are summed.
    pub fn new<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self, PolyError> {
        let names: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut order: Vec<usize> = (0..names.len()).collect();
        order.sort_by(|&a, &b| names[a].cmp(&names[b]));
        for w in order.windows(2) {
            if names[w[0]] == names[w[1]] {
                return Err(PolyError::DuplicateVariable(names[w[0]].clone()));
            }
        }
        let sorted: Vec<String> = order.iter().map(|&i| names[i].clone()).collect();
        let mut map = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != names.len() {
                return Err(PolyError::Arity {
                    expected: names.len(),
                    got: exps.len(),
                });
            }
            let key: Vec<u32> = order.iter().map(|&i| exps[i]).collect();
            accumulate(&mut map, key, c);
        }
        Ok(MultiPoly {
            vars: sorted,
            terms: map,
        })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// `c * v1^e1 * v2^e2 ...`
    pub fn monomial(c: Rational, powers: &[(&str, u32)]) -> Self {
        powers
            .iter()
            .fold(Self::constant(c), |acc, (v, e)| acc * Self::var(v).pow(*e))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Variables that occur with a nonzero exponent.
    pub fn used_vars(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.occurs(i))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self.var_index(name) {
            Some(i) => self.terms.keys().any(|e| e[i] > 0),
            None => false,
        }
    }

    /// The value when no variable occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next()?;
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    fn embed(&self, target: &[String]) -> BTreeMap<Vec<u32>, Rational> {
        if target == self.vars.as_slice() {
            return self.terms.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                target
                    .binary_search(v)
                    .expect("target contains all variables")
            })
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut k = vec![0u32; target.len()];
                for (i, &x) in e.iter().enumerate() {
                    k[idx[i]] = x;
                }
                (k, c.clone())
            })
            .collect()
    }

    /// Same polynomial declared over a larger variable list.
    pub fn with_vars<S: AsRef<str>>(&self, extra: &[S]) -> Self {
        let ex: Vec<String> = extra.iter().map(|s| s.as_ref().to_string()).collect();
        let vars = union_vars(&self.vars, &ex);
        let terms = self.embed(&vars);
        MultiPoly { vars, terms }
    }

    fn occurs(&self, i: usize) -> bool {
        self.terms.keys().any(|e| e[i] > 0)
    }

    /// Removes variables that do not occur.
    pub fn pruned(&self) -> Self {
        let keep: Vec<usize> = (0..self.vars.len()).filter(|&i| self.occurs(i)).collect();
        MultiPoly {
            vars: keep.iter().map(|&i| self.vars[i].clone()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
                .collect(),
        }
    }

    fn zip_with(&self, o: &Self, sign: bool) -> Self {
        let vars = union_vars(&self.vars, &o.vars);
        let mut terms = self.embed(&vars);
        for (e, c) in o.embed(&vars) {
            accumulate(&mut terms, e, if sign { c } else { -c });
        }
        MultiPoly { vars, terms }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return MultiPoly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    fn mul_poly(&self, o: &Self) -> Self {
        let vars = union_vars(&self.vars, &o.vars);
        let a = self.embed(&vars);
        let b = o.embed(&vars);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut terms, e, ca * cb);
            }
        }
        MultiPoly { vars, terms }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = MultiPoly::one().with_vars(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_poly(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_poly(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.var_index(name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn derivative(&self, name: &str) -> Result<Self, PolyError> {
        let i = self
            .var_index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.into()))?;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut k = e.clone();
                k[i] -= 1;
                accumulate(&mut terms, k, c * Rational::from_integer(e[i].into()));
            }
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Coefficients as a polynomial in `name`; entry `j` multiplies `name^j`.
    /// The returned coefficients no longer mention `name`.
    pub fn coefficients_in(&self, name: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(name) else {
            return vec![self.clone()];
        };
        let rest: Vec<String> = self
            .vars
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, v)| v.clone())
            .collect();
        let deg = self.degree_in(name) as usize;
        let mut out: Vec<BTreeMap<Vec<u32>, Rational>> = vec![BTreeMap::new(); deg + 1];
        for (e, c) in &self.terms {
            let mut k = e.clone();
            let p = k.remove(i) as usize;
            out[p].insert(k, c.clone());
        }
        out.into_iter()
            .map(|terms| MultiPoly {
                vars: rest.clone(),
                terms,
            })
            .collect()
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_in(name: &str, coeffs: &[MultiPoly]) -> Self {
        let x = MultiPoly::var(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    /// Dense rational coefficients (index = power) when only `name` occurs.
    pub fn to_univariate(&self, name: &str) -> Result<Vec<Rational>, PolyError> {
        let coeffs = self.coefficients_in(name);
        coeffs
            .iter()
            .map(|c| {
                c.as_constant()
                    .ok_or_else(|| PolyError::NotUnivariate(name.into()))
            })
            .collect()
    }

    /// Exact division by `name`; fails if some term lacks the factor.
    pub fn div_var(&self, name: &str) -> Result<Self, PolyError> {
        let i = self
            .var_index(name)
            .ok_or_else(|| PolyError::NotDivisible(name.into()))?;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return Err(PolyError::NotDivisible(name.into()));
            }
            let mut k = e.clone();
            k[i] -= 1;
            terms.insert(k, c.clone());
        }
        Ok(MultiPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Substitutes a polynomial for a variable.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> Self {
        if self.var_index(name).is_none() {
            return self.clone();
        }
        let coeffs = self.coefficients_in(name);
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = acc * value + c;
        }
        acc
    }

    /// Replaces `name^2` by `value`; every exponent of `name` must be even.
    pub fn substitute_square(&self, name: &str, value: &MultiPoly) -> Result<Self, PolyError> {
        let coeffs = self.coefficients_in(name);
        let mut acc = MultiPoly::zero();
        for (j, c) in coeffs.iter().enumerate().rev() {
            if j % 2 == 1 {
                if !c.is_zero() {
                    return Err(PolyError::NotDivisible(name.into()));
                }
                continue;
            }
            acc = acc * value + c;
        }
        Ok(acc)
    }

    /// Exact substitution of rational values; substituted variables disappear.
    pub fn eval_partial(&self, values: &HashMap<String, Rational>) -> Result<Self, PolyError> {
        for k in values.keys() {
            if self.var_index(k).is_none() {
                return Err(PolyError::UnknownVariable(k.clone()));
            }
        }
        let mut out = self.clone();
        for (k, v) in values {
            out = out.substitute(k, &MultiPoly::constant(v.clone()));
        }
        Ok(out)
    }

    /// Horner evaluation in any scalar type. Every occurring variable needs a value.
    pub fn eval_with<S: Scalar>(&self, value: impl Fn(&str) -> Option<S>) -> Result<S, PolyError> {
        let vals: Vec<S> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| match value(v) {
                Some(x) => Ok(x),
                None if !self.occurs(i) => Ok(S::zero()),
                None => Err(PolyError::Unassigned(v.clone())),
            })
            .collect::<Result<_, _>>()?;
        let terms: Vec<(&[u32], &Rational)> = self.terms().collect();
        Ok(horner(&terms, 0, &vals))
    }

    pub fn eval(&self, values: &HashMap<String, f64>) -> Result<f64, PolyError> {
        self.eval_with(|v| values.get(v).copied())
    }

    pub fn eval_exact(&self, values: &HashMap<String, Rational>) -> Result<Rational, PolyError> {
        self.eval_with(|v| values.get(v).cloned())
    }

    /// Sum of absolute term values at a point, the natural scale for residuals.
    pub fn term_magnitude(&self, values: &HashMap<String, f64>) -> Result<f64, PolyError> {
        let vals: Vec<f64> = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| match values.get(v) {
                Some(&x) => Ok(x),
                None if !self.occurs(i) => Ok(0.0),
                None => Err(PolyError::Unassigned(v.clone())),
            })
            .collect::<Result<_, _>>()?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(&vals)
                    .fold(to_f64(c).abs(), |acc, (&p, x)| acc * x.abs().powi(p as i32))
            })
            .sum())
    }

    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            accumulate(&mut terms, e.clone(), f(c));
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms,
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

fn accumulate(map: &mut BTreeMap<Vec<u32>, Rational>, key: Vec<u32>, c: Rational) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn horner<S: Scalar>(terms: &[(&[u32], &Rational)], var: usize, vals: &[S]) -> S {
    if var == vals.len() {
        return terms
            .iter()
            .fold(S::zero(), |acc, (_, c)| acc.plus(&S::from_rational(c)));
    }
    let mut groups: BTreeMap<u32, Vec<(&[u32], &Rational)>> = BTreeMap::new();
    for t in terms {
        groups.entry(t.0[var]).or_default().push(*t);
    }
    let x = &vals[var];
    let mut acc = S::zero();
    let mut prev: Option<u32> = None;
    for (&p, group) in groups.iter().rev() {
        if let Some(q) = prev {
            acc = acc.times(&x.powu(q - p));
        }
        acc = acc.plus(&horner(group, var + 1, vals));
        prev = Some(p);
    }
    if let Some(q) = prev {
        acc = acc.times(&x.powu(q));
    }
    acc
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        if self.vars == o.vars {
            return self.terms == o.terms;
        }
        let vars = union_vars(&self.vars, &o.vars);
        self.embed(&vars) == o.embed(&vars)
    }
}

impl Eq for MultiPoly {}

impl From<Rational> for MultiPoly {
    fn from(r: Rational) -> Self {
        MultiPoly::constant(r)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::render(self))
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        super::text::parse(s)
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                let f: fn(&MultiPoly, &MultiPoly) -> MultiPoly = $body;
                f(self, o)
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                (&self).$m(&o)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: &MultiPoly) -> MultiPoly {
                (&self).$m(o)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $m(self, o: MultiPoly) -> MultiPoly {
                self.$m(&o)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| a.zip_with(b, true));
poly_binop!(Sub, sub, |a, b| a.zip_with(b, false));
poly_binop!(Mul, mul, |a, b| a.mul_poly(b));

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}
