//! Error types shared across the pipeline.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("operation requires degree >= 1")]
    ConstantPolynomial,
    #[error("prime {0} divides the leading coefficient")]
    PrimeDividesLeading(u64),
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial must be squarefree")]
    NotSquarefree,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbcError {
    #[error("a({tau}) is not an integer for this parameter set")]
    NotIntegral { tau: i64 },
    #[error("a({tau}) collides with a base point a_j (degenerate family member)")]
    Degenerate { tau: i64 },
    #[error("no base tuple found within the search budget")]
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("working precision exhausted at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("|a(tau)| = {a_abs} is below the configured floor {floor}")]
    BelowFloor { a_abs: String, floor: i64 },
    #[error("expected a totally real field: {found} real roots, degree {degree}")]
    NotTotallyReal { found: usize, degree: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KummerError {
    #[error("precision exhausted while certifying at {bits} bits")]
    PrecisionExhausted { bits: u32 },
    #[error("unit-system determinant interval straddles zero at max precision")]
    SingularUnitSystem,
    #[error("saturation refinement did not terminate within {0} rounds")]
    RefinementDiverged(u32),
    #[error(transparent)]
    Root(#[from] RootError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("construction identity violated: {0}")]
    IdentityViolated(String),
    #[error("certificate/oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("candidate is not suitable: {0}")]
    NotSuitable(String),
    #[error(transparent)]
    Kummer(#[from] KummerError),
}

#[derive(Debug, Error)]
pub enum SurveyError {
    #[error("certificate schema version mismatch on line {line}: found {found}")]
    SchemaMismatch { line: usize, found: String },
    #[error("corrupted certificate record on line {line}: {reason}")]
    CorruptRecord { line: usize, reason: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Cert(#[from] CertError),
}
