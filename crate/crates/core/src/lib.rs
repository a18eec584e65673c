//! Exact Hermite-Padé approximants to the exponential function.
//!
//! The crate builds the linear systems whose kernels give type II
//! Hermite-Padé approximants to `e^{a1 t}, ..., e^{am t}`, computes their
//! maximal minors exactly over `Z[a1, ..., am]`, and certifies the known
//! common factors of those minors by exact division. Two settings are covered:
//!
//! * [`tame`]: numerator degrees free, all remainder orders equal. The
//!   solution is explicit and every minor factors completely.
//! * [`wild`]: all degrees equal, remainder orders free. Only a common
//!   factor of the minors is known; [`siegel`] supplies small integer
//!   solutions and bounds when the system is underdetermined.
//!
//! Arithmetic is generic over the scalar: polynomials are [`Poly<C>`] for any
//! [`Coefficient`](scalar::Coefficient), matrices are [`Matrix<T>`] over any
//! [`Ring`](scalar::Ring) with exact division. The aliases below fix the
//! concrete types used throughout.

pub mod cli;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod series;
pub mod siegel;
pub mod tame;
pub mod vandermonde;
pub mod wild;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use linalg::{ColumnSelection, DetAlgorithm, Matrix};
pub use poly::{poly_gcd, IntegerPoint, Monomial, Poly, RatPoly};

/// Polynomial in `Z[a1, ..., am]`.
pub type IntPoly = Poly<BigInt>;
/// Polynomial in `Q[a1, ..., am]`.
pub type QPoly = Poly<BigRational>;
/// Integer matrix.
pub type IntMatrix = Matrix<BigInt>;
/// Matrix over `Z[a1, ..., am]`.
pub type PolyMatrix = Matrix<IntPoly>;
/// Matrix over `Q[a1, ..., am]`.
pub type QPolyMatrix = Matrix<QPoly>;
/// Rational matrix.
pub type RatMatrix = Matrix<BigRational>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("not divisible")]
    NotDivisible,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of an all-zero family")]
    AllZero,
    #[error("polynomial uses {needed} variables but the point has {given}")]
    Arity { needed: usize, given: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("quotient is not a constant: {0}")]
    NonConstantQuotient(String),
    #[error("identity falsified: {0}")]
    IdentityFalsified(String),
    #[error("divisibility falsified: {0}")]
    DivisibilityFalsified(String),
    #[error("series coefficient {index} is nonzero")]
    CoefficientNonZero { index: usize },
    #[error("matrix does not have full row rank")]
    RankDeficient,
    #[error("kernel search budget exhausted at norm {0}")]
    BudgetExceeded(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
