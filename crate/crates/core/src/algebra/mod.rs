//! Exact arithmetic: coefficient fields, multivariate polynomials, and dense
//! linear algebra. No floating point is used anywhere in this crate.

pub mod field;
pub mod matrix;
pub mod poly;

pub use field::{Elem, Field, FieldSpec};
pub use matrix::{ExactMatrix, MinorCache, PolyMatrix};
pub use poly::{Monomial, MonomialOrder, Poly, PolyRing, RingRef};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("{0} is not a prime")]
    NonPrimeCharacteristic(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be positive, got {0}")]
    InvalidExtensionDegree(u32),
    #[error("extension modulus must be monic and irreducible of the stated degree")]
    ReducibleModulus,
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("element or operand belongs to a different field")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix rows have different lengths")]
    NotRectangular,
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("column indices must be distinct, increasing and in range")]
    InvalidColumnSet,
    #[error("division by zero")]
    DivisionByZero,
}
