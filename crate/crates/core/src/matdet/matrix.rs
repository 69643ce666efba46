use std::fmt;

use super::ring::Ring;
use super::MatrixError;
use crate::polyalg::{ComplexPoly, MultiPoly, Rational};

/// Dense square matrix over a ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

pub type PolyMatrix = Matrix<MultiPoly>;
pub type ComplexMatrix = Matrix<ComplexPoly>;
pub type RationalMatrix = Matrix<Rational>;

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(MatrixError::NotSquare);
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diag(d: Vec<T>) -> Self {
        Self::from_fn(
            d.len(),
            |i, j| if i == j { d[i].clone() } else { T::zero() },
        )
    }

    /// `diag(a, b)` as a block matrix.
    pub fn block_diag(a: &Self, b: &Self) -> Self {
        let n = a.n + b.n;
        Self::from_fn(n, |i, j| match (i < a.n, j < a.n) {
            (true, true) => a.get(i, j).clone(),
            (false, false) => b.get(i - a.n, j - a.n).clone(),
            _ => T::zero(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Zero-based access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, o: &Self) -> Result<Self, MatrixError> {
        self.check_dim(o)?;
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, MatrixError> {
        self.check_dim(o)?;
        Ok(Matrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&o.data)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn mul(&self, o: &Self) -> Result<Self, MatrixError> {
        self.check_dim(o)?;
        Ok(Self::from_fn(self.n, |i, j| {
            (0..self.n).fold(T::zero(), |acc, k| {
                acc.add(&self.get(i, k).mul(o.get(k, j)))
            })
        }))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x.mul(s))
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Submatrix on zero-based row and column lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "square submatrix");
        Self::from_fn(rows.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    pub(crate) fn check_dim(&self, o: &Self) -> Result<(), MatrixError> {
        if self.n != o.n {
            return Err(MatrixError::DimensionMismatch {
                left: self.n,
                right: o.n,
            });
        }
        Ok(())
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.n {
            if i > 0 {
                f.write_str("; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        f.write_str("]")
    }
}

impl<T: Ring + std::str::FromStr<Err = crate::polyalg::PolyError>> std::str::FromStr for Matrix<T> {
    type Err = MatrixError;

    /// Parses `[a, b; c, d]`.
    fn from_str(s: &str) -> Result<Self, MatrixError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|x| x.strip_suffix(']'))
            .ok_or_else(|| MatrixError::Parse("matrix must be enclosed in [ ]".into()))?;
        if inner.trim().is_empty() {
            return Ok(Matrix {
                n: 0,
                data: Vec::new(),
            });
        }
        let rows = split_top(inner, ';')
            .into_iter()
            .map(|row| {
                split_top(row, ',')
                    .into_iter()
                    .map(|e| {
                        e.trim()
                            .parse::<T>()
                            .map_err(|err| MatrixError::Parse(format!("{e:?}: {err}")))
                    })
                    .collect::<Result<Vec<T>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows)
    }
}

/// Splits at `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
