use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` has no assigned value")]
    Unassigned(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("exponent tuple has {got} entries, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
    #[error("polynomial is not univariate in `{0}`")]
    NotUnivariate(String),
    #[error("division by a non-constant or zero polynomial")]
    BadDivision,
    #[error("`{0}` does not divide the polynomial exactly")]
    NotDivisible(String),
    #[error("truncation order too low: achievable order is {achievable}, requested {requested}")]
    InsufficientOrder {
        achievable: Rational,
        requested: Rational,
    },
    #[error("series exponents are not on a common lattice")]
    Lattice,
    #[error("negative exponent in series power")]
    NegativePower,
}
