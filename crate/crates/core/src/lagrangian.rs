//! Quadratic Lagrangians with higher derivatives and their plane-wave symbols.
//!
//! Plane waves are taken as `exp(-i(w t - k.x))`, so `d/dt -> -i w` and
//! `d/dx_j -> i k_j`.

use std::collections::BTreeMap;
use std::fmt;

use num::Zero;

use crate::matdet::{det, ComplexMatrix, Matrix};
use crate::polyalg::{ComplexPoly, MultiPoly, Rational};

/// Frequency variable in symbol matrices and dispersion polynomials.
pub const OMEGA: &str = "w";

/// Wavenumber variable names for spatial dimension `dim`.
pub fn wave_vars(dim: usize) -> Vec<&'static str> {
    match dim {
        0 => vec![],
        1 => vec!["k"],
        2 => vec!["kx", "ky"],
        _ => vec!["kx", "ky", "kz"],
    }
}

/// Names that cannot be used for parameters.
pub const RESERVED: [&str; 6] = ["w", "k", "kx", "ky", "kz", "I"];

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LagrangianError {
    #[error("spatial dimension {0} is not supported (at most 3)")]
    Dimension(usize),
    #[error("multi-index {0:?} has the wrong length for dimension {1}")]
    IndexLength(Vec<u32>, usize),
    #[error("field index {0} out of range")]
    Field(usize),
    #[error("duplicate field `{0}`")]
    DuplicateField(String),
    #[error("dispersion polynomial has an imaginary part")]
    NotReal,
}

/// Derivative orders `(t, x1, ..., xn)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim + 1])
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn plus(&self, o: &Self) -> Self {
        MultiIndex(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Token form: `dxx`, `dt`, or `d` for the field itself.
    pub fn token(&self) -> String {
        let mut s = String::from("d");
        for (axis, &n) in ['t', 'x', 'y', 'z'].iter().zip(&self.0) {
            for _ in 0..n {
                s.push(*axis);
            }
        }
        s
    }

    /// Plane-wave symbol of the derivative, as a complex monomial.
    pub fn symbol(&self) -> ComplexPoly {
        let ks = wave_vars(self.dim());
        let mut p = MultiPoly::var(OMEGA).pow(self.0[0]);
        for (j, &n) in self.0[1..].iter().enumerate() {
            p = p * MultiPoly::var(ks[j]).pow(n);
        }
        if self.0[0] % 2 == 1 {
            p = -p;
        }
        ComplexPoly::real(p).times_i_pow(self.order())
    }
}

/// A derivative of one field.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldDeriv {
    pub field: usize,
    pub index: MultiIndex,
}

impl FieldDeriv {
    pub fn new(field: usize, index: Vec<u32>) -> Self {
        FieldDeriv {
            field,
            index: MultiIndex(index),
        }
    }
}

pub type CoeffTable = BTreeMap<(FieldDeriv, FieldDeriv), MultiPoly>;

/// `L = 1/2 sum a(X, Y) v_X v_Y` with a symmetric coefficient table.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct QuadraticLagrangian {
    dim: usize,
    fields: Vec<String>,
    params: BTreeMap<String, Rational>,
    coupling: Option<String>,
    coeffs: CoeffTable,
}

impl QuadraticLagrangian {
    pub fn new(dim: usize, fields: Vec<String>) -> Result<Self, LagrangianError> {
        if dim > 3 {
            return Err(LagrangianError::Dimension(dim));
        }
        for (i, f) in fields.iter().enumerate() {
            if fields[..i].contains(f) {
                return Err(LagrangianError::DuplicateField(f.clone()));
            }
        }
        Ok(QuadraticLagrangian {
            dim,
            fields,
            ..Default::default()
        })
    }

    /// Builds the symmetric table `(raw + raw^T) / 2`.
    pub fn symmetrize(
        dim: usize,
        fields: Vec<String>,
        raw: &CoeffTable,
    ) -> Result<Self, LagrangianError> {
        let mut lag = Self::new(dim, fields)?;
        let half = Rational::new(1.into(), 2.into());
        for ((x, y), c) in raw {
            lag.check(x)?;
            lag.check(y)?;
            let h = c.scale(&half);
            lag.add_to(x.clone(), y.clone(), &h);
            lag.add_to(y.clone(), x.clone(), &h);
        }
        Ok(lag)
    }

    fn check(&self, x: &FieldDeriv) -> Result<(), LagrangianError> {
        if x.field >= self.fields.len() {
            return Err(LagrangianError::Field(x.field));
        }
        if x.index.0.len() != self.dim + 1 {
            return Err(LagrangianError::IndexLength(x.index.0.clone(), self.dim));
        }
        Ok(())
    }

    fn add_to(&mut self, x: FieldDeriv, y: FieldDeriv, c: &MultiPoly) {
        let key = (x, y);
        let sum = self.coeffs.get(&key).cloned().unwrap_or_default() + c;
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    /// Adds the Lagrangian term `c * v_X * v_Y` (order-insensitive).
    pub fn add_term(
        &mut self,
        x: FieldDeriv,
        y: FieldDeriv,
        c: &MultiPoly,
    ) -> Result<(), LagrangianError> {
        self.check(&x)?;
        self.check(&y)?;
        if x == y {
            self.add_to(x.clone(), y, &c.scale(&Rational::from_integer(2.into())));
        } else {
            self.add_to(x.clone(), y.clone(), c);
            self.add_to(y, x, c);
        }
        Ok(())
    }

    pub fn set_param(&mut self, name: &str, value: Rational) {
        self.params.insert(name.to_string(), value);
    }

    pub fn set_coupling(&mut self, name: Option<&str>) {
        self.coupling = name.map(str::to_string);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn fields(&self) -> &[String] {
        &self.fields
    }

    pub fn params(&self) -> &BTreeMap<String, Rational> {
        &self.params
    }

    pub fn coupling(&self) -> Option<&str> {
        self.coupling.as_deref()
    }

    pub fn coeffs(&self) -> &CoeffTable {
        &self.coeffs
    }

    pub fn coefficient(&self, x: &FieldDeriv, y: &FieldDeriv) -> MultiPoly {
        self.coeffs
            .get(&(x.clone(), y.clone()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn is_symmetric(&self) -> bool {
        self.coeffs
            .iter()
            .all(|((x, y), c)| self.coefficient(y, x) == *c)
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = self.clone();
        out.coeffs = if s.is_zero() {
            BTreeMap::new()
        } else {
            self.coeffs
                .iter()
                .map(|(k, v)| (k.clone(), v.scale(s)))
                .collect()
        };
        out
    }

    /// Replaces every declared parameter except `keep` by its value.
    pub fn specialize(&self, keep: &[&str]) -> Self {
        let mut out = self.clone();
        out.coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| {
                let mut v = v.clone();
                for (name, val) in &self.params {
                    if !keep.contains(&name.as_str()) {
                        v = v.substitute(name, &MultiPoly::constant(val.clone()));
                    }
                }
                (k.clone(), v)
            })
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }
}

/// Symbol matrix of the Euler-Lagrange operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolMatrix {
    pub matrix: ComplexMatrix,
}

impl SymbolMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// The entry as `(poly, imaginary)` when it is purely real or purely imaginary.
    pub fn entry_flagged(&self, i: usize, j: usize) -> Option<(MultiPoly, bool)> {
        let e = self.matrix.get(i, j);
        if e.is_real() {
            Some((e.re.clone(), false))
        } else if e.is_imaginary() {
            Some((e.im.clone(), true))
        } else {
            None
        }
    }

    pub fn is_hermitian(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| *self.matrix.get(i, j) == self.matrix.get(j, i).conj()))
    }
}

impl fmt::Display for SymbolMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.matrix)
    }
}

/// Entry `(i, j)` is `sum (-1)^|eta| a(i eta; j gamma) symbol(gamma + eta)`.
pub fn symbol_matrix(lag: &QuadraticLagrangian) -> SymbolMatrix {
    let n = lag.fields.len();
    let mut m: ComplexMatrix = Matrix::zeros(n);
    for ((x, y), c) in &lag.coeffs {
        let mut term = lag_symbol(x, y).map(|p| p * c);
        if x.index.order() % 2 == 1 {
            term = -term;
        }
        let cur = m.get(x.field, y.field).clone();
        m.set(x.field, y.field, cur + term);
    }
    SymbolMatrix { matrix: m }
}

fn lag_symbol(x: &FieldDeriv, y: &FieldDeriv) -> ComplexPoly {
    x.index.plus(&y.index).symbol()
}

pub fn dispersion_poly(lag: &QuadraticLagrangian) -> Result<MultiPoly, LagrangianError> {
    let d = det(&symbol_matrix(lag).matrix);
    if !d.im.is_zero() {
        return Err(LagrangianError::NotReal);
    }
    Ok(d.re)
}

/// How two matrices relate: `a = overall * S b S` with `S = diag(signs)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignPattern {
    pub overall: i8,
    pub signs: Vec<i8>,
}

/// Finds an overall sign and a diagonal sign similarity relating `a` to `factor * b`.
pub fn match_up_to_signs(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    factor: &Rational,
) -> Option<SignPattern> {
    let n = a.dim();
    if b.dim() != n {
        return None;
    }
    let fb = b.map(|e| e.scale(factor));
    for overall in [1i8, -1] {
        for mask in 0..(1u32 << n.saturating_sub(1)) {
            let signs: Vec<i8> = (0..n)
                .map(|i| {
                    if i > 0 && mask & (1 << (i - 1)) != 0 {
                        -1
                    } else {
                        1
                    }
                })
                .collect();
            let ok = (0..n).all(|i| {
                (0..n).all(|j| {
                    let s = overall * signs[i] * signs[j];
                    let e = fb.get(i, j);
                    let t = if s < 0 { -e } else { e.clone() };
                    *a.get(i, j) == t
                })
            });
            if ok {
                return Some(SignPattern { overall, signs });
            }
        }
    }
    None
}
