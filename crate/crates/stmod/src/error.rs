use thiserror::Error;

/// Errors produced by constructions and operations in this crate.
///
/// Absence of a solution to a linear system is *not* an error (see
/// [`crate::ff::FpMatrix::solve`]); these variants cover contract violations
/// and constructions that fail loudly.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error(
        "dimension mismatch in {context}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}"
    )]
    DimensionMismatch {
        context: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("exponent {exponent} is not a positive power of p = {p}")]
    BadExponent { p: u32, exponent: u32 },

    #[error("scalar {value} out of range for modulus {modulus}")]
    ScalarOutOfRange { value: u32, modulus: u32 },

    #[error("operands belong to different algebras")]
    AlgebraMismatch,

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("matrix is not a module homomorphism: {0}")]
    NotAHom(String),

    #[error("invalid split: {0}")]
    InvalidSplit(String),

    #[error("pi-point coefficients must not all be zero")]
    ZeroPiPoint,

    #[error("operation requires an elementary abelian algebra")]
    NotElementaryAbelian,

    #[error("pi-point is not flat: restriction of the regular module is not free")]
    PiPointNotFlat,

    #[error("primitive coproduct is only available in characteristic 2")]
    PrimitiveNeedsCharTwo,

    #[error("complex too short: need terms up to degree {needed}, have {have}")]
    ComplexTooShort { needed: usize, have: usize },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("constraint system unsolvable: {0}")]
    ConstraintUnsolvable(String),

    #[error("no isomorphism found: {0}")]
    NoIsomorphismFound(String),

    #[error("lifting failed at degree {degree}")]
    LiftFailed { degree: usize },

    #[error("resolution too short for degree {0}")]
    DegreeOutOfRange(i64),

    #[error("operation requires a cyclic algebra (single generator), got {0} generators")]
    NotCyclic(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
