use super::det::{adjugate, det, mixed_minor_sum};
use super::matrix::Matrix;
use super::ring::{PolyRing, Ring};
use super::MatrixError;

/// Coefficients of `det(A + b B(b))` grouped by powers of `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledExpansion<T> {
    pub det_a: T,
    /// `c_1, ..., c_{n-1}`; each may still depend on `b`.
    pub coeffs: Vec<T>,
    pub det_b: T,
}

impl<T: PolyRing> CoupledExpansion<T> {
    pub fn reassemble(&self, var: &str) -> T {
        let b = T::var(var);
        let mut acc = self.det_a.clone();
        let mut bp = T::one();
        for c in &self.coeffs {
            bp = bp.mul(&b);
            acc = acc.add(&c.mul(&bp));
        }
        acc.add(&self.det_b.mul(&bp.mul(&b)))
    }
}

pub fn coupled_b_expansion<T: PolyRing>(
    a: &Matrix<T>,
    bpoly: &Matrix<T>,
    var: &str,
) -> Result<CoupledExpansion<T>, MatrixError> {
    a.check_dim(bpoly)?;
    if a.entries().any(|e| e.contains_var(var)) {
        return Err(MatrixError::DependsOnCoupling(var.to_string()));
    }
    let n = a.dim();
    let coeffs = (1..n).map(|r| mixed_minor_sum(a, bpoly, n - r)).collect();
    Ok(CoupledExpansion {
        det_a: det(a),
        coeffs,
        det_b: det(bpoly),
    })
}

/// `tr(adj(A) B)`, the first-order coefficient.
pub fn first_order_trace<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T, MatrixError> {
    Ok(adjugate(a).mul(b)?.trace())
}

/// First-order coefficient for diagonal `A`: `sum_i B_ii prod_{j != i} A_jj`.
pub fn first_order_diagonal<T: Ring>(a: &Matrix<T>, b: &Matrix<T>) -> Result<T, MatrixError> {
    a.check_dim(b)?;
    if !a.is_diagonal() {
        return Err(MatrixError::NotDiagonal);
    }
    let n = a.dim();
    Ok((0..n).fold(T::zero(), |acc, i| {
        let p = (0..n)
            .filter(|&j| j != i)
            .fold(T::one(), |p, j| p.mul(a.get(j, j)));
        acc.add(&p.mul(b.get(i, i)))
    }))
}

/// Two uncoupled subsystems joined by a coupling term that vanishes at `b = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledSystem<T> {
    pub lambda1: Matrix<T>,
    pub lambda2: Matrix<T>,
    /// The full coupling term `b B(b)`.
    pub coupling: Matrix<T>,
    pub var: String,
}

/// Result of splitting a coupled dispersion relation.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorized<T> {
    pub g1: T,
    pub g2: T,
    pub remainder: T,
}

impl<T: PolyRing> CoupledSystem<T> {
    pub fn new(
        lambda1: Matrix<T>,
        lambda2: Matrix<T>,
        coupling: Matrix<T>,
        var: &str,
    ) -> Result<Self, MatrixError> {
        let n = lambda1.dim() + lambda2.dim();
        if coupling.dim() != n {
            return Err(MatrixError::DimensionMismatch {
                left: n,
                right: coupling.dim(),
            });
        }
        Ok(CoupledSystem {
            lambda1,
            lambda2,
            coupling,
            var: var.to_string(),
        })
    }

    pub fn lambda(&self) -> Matrix<T> {
        Matrix::block_diag(&self.lambda1, &self.lambda2)
    }

    /// `Lambda + b B(b)`.
    pub fn system_matrix(&self) -> Matrix<T> {
        self.lambda()
            .add(&self.coupling)
            .expect("matching dimensions")
    }

    /// `B(b)`, the coupling divided by `b`.
    pub fn b_matrix(&self) -> Result<Matrix<T>, MatrixError> {
        let rows = self
            .coupling
            .rows()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|e| e.div_var(&self.var).ok_or(MatrixError::CouplingAtZero))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::from_rows(rows)
    }

    pub fn expansion(&self) -> Result<CoupledExpansion<T>, MatrixError> {
        coupled_b_expansion(&self.lambda(), &self.b_matrix()?, &self.var)
    }
}

pub fn factorize_coupled<T: PolyRing>(
    sys: &CoupledSystem<T>,
) -> Result<Factorized<T>, MatrixError> {
    if sys
        .coupling
        .entries()
        .any(|e| !e.at_zero(&sys.var).is_zero())
    {
        return Err(MatrixError::CouplingAtZero);
    }
    if sys.lambda().entries().any(|e| e.contains_var(&sys.var)) {
        return Err(MatrixError::DependsOnCoupling(sys.var.clone()));
    }
    let g1 = det(&sys.lambda1);
    let g2 = det(&sys.lambda2);
    let full = det(&sys.system_matrix());
    let remainder = full.sub(&g1.mul(&g2));
    Ok(Factorized { g1, g2, remainder })
}
