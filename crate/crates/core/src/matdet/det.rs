use std::collections::HashMap;

use itertools::Itertools;
use num::bigint::BigInt;
use num::{Integer, One, Zero};

use super::matrix::Matrix;
use super::ring::Ring;
use super::MatrixError;
use crate::polyalg::Rational;

/// Exact determinant.
///
/// Constant matrices go through fraction-free elimination over the integers;
/// anything symbolic uses cofactor expansion with memoized minors.
pub fn det<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.dim();
    if n == 0 {
        return T::one();
    }
    let consts: Option<Vec<Rational>> = m.entries().map(|e| e.to_constant()).collect();
    match consts {
        Some(c) => T::from_constant(bareiss(n, c)),
        None => det_minors(m),
    }
}

/// Bareiss elimination after clearing row denominators.
fn bareiss(n: usize, entries: Vec<Rational>) -> Rational {
    let mut scale: Rational = One::one();
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in entries.chunks(n) {
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        scale /= Rational::from_integer(l.clone());
        a.push(
            row.iter()
                .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
                .collect(),
        );
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return Zero::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Rational::from_integer(sign * &a[n - 1][n - 1]) * scale
}

/// Row-by-row expansion; `dp[S]` is the minor on the first |S| rows and columns `S`.
fn det_minors<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.dim();
    let mut dp: HashMap<u64, T> = HashMap::new();
    dp.insert(0, T::one());
    for r in 0..n {
        let mut next: HashMap<u64, T> = HashMap::new();
        for (&s, v) in &dp {
            if v.is_zero() {
                continue;
            }
            for j in 0..n {
                if s & (1 << j) != 0 {
                    continue;
                }
                let a = m.get(r, j);
                if a.is_zero() {
                    continue;
                }
                let above = (s >> (j + 1)).count_ones();
                let term = v.mul(a);
                let term = if above % 2 == 1 { term.neg() } else { term };
                let e = next.entry(s | (1 << j)).or_insert_with(T::zero);
                *e = e.add(&term);
            }
        }
        dp = next;
    }
    dp.remove(&((1u64 << n) - 1)).unwrap_or_else(T::zero)
}

/// `adj(A)[i][j] = (-1)^(i+j) det A[j^c | i^c]`.
pub fn adjugate<T: Ring>(m: &Matrix<T>) -> Matrix<T> {
    let n = m.dim();
    if n == 1 {
        return Matrix::identity(1);
    }
    Matrix::from_fn(n, |i, j| {
        let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let d = det(&m.submatrix(&rows, &cols));
        if (i + j) % 2 == 1 {
            d.neg()
        } else {
            d
        }
    })
}

/// Strictly increasing 1-based index tuple inside `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndexSet {
    n: usize,
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self, MatrixError> {
        let ok = !indices.is_empty()
            && indices.iter().all(|&i| (1..=n).contains(&i))
            && indices.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(MatrixError::BadIndexSet { indices, n });
        }
        Ok(IndexSet { n, indices })
    }

    /// All sets of size `r` in lexicographic order.
    pub fn all(r: usize, n: usize) -> Vec<IndexSet> {
        (1..=n)
            .combinations(r)
            .map(|indices| IndexSet { n, indices })
            .collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Sum of the indices, which fixes the expansion sign.
    pub fn weight(&self) -> usize {
        self.indices.iter().sum()
    }

    /// The increasing complement in `1..=n`; may be empty.
    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|i| !self.indices.contains(i)).collect()
    }

    fn zero_based(&self) -> Vec<usize> {
        self.indices.iter().map(|i| i - 1).collect()
    }
}

fn zero_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i - 1).collect()
}

fn sign_of(w: usize) -> bool {
    w % 2 == 1
}

/// Generalized Laplace expansion along the rows in `rows`.
pub fn laplace_expand<T: Ring>(m: &Matrix<T>, rows: &IndexSet) -> Result<T, MatrixError> {
    if rows.n() != m.dim() {
        return Err(MatrixError::BadIndexSet {
            indices: rows.indices.clone(),
            n: m.dim(),
        });
    }
    let alpha = rows.zero_based();
    let alpha_c = zero_based(&rows.complement());
    let mut acc = T::zero();
    for beta in IndexSet::all(rows.len(), m.dim()) {
        let b = beta.zero_based();
        let bc = zero_based(&beta.complement());
        let term = det(&m.submatrix(&alpha, &b)).mul(&det(&m.submatrix(&alpha_c, &bc)));
        acc = if sign_of(rows.weight() + beta.weight()) {
            acc.sub(&term)
        } else {
            acc.add(&term)
        };
    }
    Ok(acc)
}

/// Sum over `alpha, beta` of size `r` of signed `det A[alpha|beta] * det B[alpha^c|beta^c]`.
pub(crate) fn mixed_minor_sum<T: Ring>(a: &Matrix<T>, b: &Matrix<T>, r: usize) -> T {
    let n = a.dim();
    let sets = IndexSet::all(r, n);
    let mut acc = T::zero();
    for alpha in &sets {
        let ar = alpha.zero_based();
        let arc = zero_based(&alpha.complement());
        for beta in &sets {
            let minor_a = det(&a.submatrix(&ar, &beta.zero_based()));
            if minor_a.is_zero() {
                continue;
            }
            let minor_b = det(&b.submatrix(&arc, &zero_based(&beta.complement())));
            let term = minor_a.mul(&minor_b);
            acc = if sign_of(alpha.weight() + beta.weight()) {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
        }
    }
    acc
}

/// `det(A + B)` as a sum of products of complementary minors.
pub fn markus_expansion<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T, MatrixError> {
    a.check_dim(b)?;
    let n = a.dim();
    let mut acc = det(a).add(&det(b));
    for r in 1..n {
        acc = acc.add(&mixed_minor_sum(a, b, r));
    }
    Ok(acc)
}
