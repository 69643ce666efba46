//! Determinants and coupled-determinant expansions over polynomial rings.

mod coupled;
mod det;
mod matrix;
mod ring;

pub use coupled::{
    coupled_b_expansion, factorize_coupled, first_order_diagonal, first_order_trace,
    CoupledExpansion, CoupledSystem, Factorized,
};
pub use det::{adjugate, det, laplace_expand, markus_expansion, IndexSet};
pub use matrix::{ComplexMatrix, Matrix, PolyMatrix, RationalMatrix};
pub use ring::{PolyRing, Ring};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid index set {indices:?} for dimension {n}")]
    BadIndexSet { indices: Vec<usize>, n: usize },
    #[error("uncoupled part depends on the coupling variable `{0}`")]
    DependsOnCoupling(String),
    #[error("coupling term does not vanish at zero coupling")]
    CouplingAtZero,
    #[error("matrix is not diagonal")]
    NotDiagonal,
    #[error("matrix parse error: {0}")]
    Parse(String),
}
