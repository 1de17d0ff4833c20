use thiserror::Error;

use crate::linalg::TightnessReport;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("division by the zero absolute value")]
    AbsDivisionByZero,
    #[error("binomial({n}, {k}) requires k <= n")]
    BinomialRange { n: u64, k: u64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("multi-index has degree {found}, expected {expected}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("Sym^{m}(Q_p^{d}) has dimension {dim}, above the cap {cap}")]
    SymDimensionCap { d: usize, m: u32, dim: String, cap: usize },
    #[error("tightness precondition not met")]
    NotTight(Box<TightnessReport>),
    #[error("<tau_{index}, tau_{index}> = {value}, expected 1")]
    NonUnitInner { index: usize, value: Rational },
    #[error("expected n = d^2 = {expected} vectors, found {found}")]
    ZaunerShape { expected: usize, found: usize },
    #[error("classical bound undefined: {0}")]
    ClassicalDomain(String),
    #[error("invalid search spec: {0}")]
    InvalidSearch(String),
    #[error("search space of {estimate} configurations exceeds the budget {budget}")]
    BudgetExceeded { estimate: String, budget: u128 },
    #[error("{0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
