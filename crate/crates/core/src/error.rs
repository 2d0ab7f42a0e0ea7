use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("spatial dimension must be odd and in 1..=7, got {0}")]
    UnsupportedDimension(i64),
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("tuning parameter kappa must be positive, got {0}")]
    InvalidKappa(f64),
    #[error("homotopy parameter must lie in [0,1], got {0}")]
    InvalidLambda(f64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("operator is not invertible at the working tolerance")]
    NotInvertible,
    #[error("matrix is not Hermitian: residual {0:.3e}")]
    NotHermitian(f64),
    #[error("signature {0} is odd; half-signature undefined")]
    OddSignature(i64),
    #[error("exact symbol mode requires a translation-invariant operator")]
    NotTranslationInvariant,
    #[error("invalid Pfaffian input: {0}")]
    BadPfaffianInput(String),
    #[error("wrong symmetry class: {0}")]
    WrongSymmetryClass(String),
    #[error("symmetry precondition violated: {0}, residual {1:.3e}")]
    SymmetryViolated(&'static str, f64),
    #[error("sign value must be +1 or -1, got {0}")]
    InvalidSign(i32),
    #[error("quadrature not converged: residual {0:.3e} from nearest integer, refine grid")]
    NotConverged(f64),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("LAPACK routine {routine} failed with info {info}")]
    Lapack { routine: &'static str, info: i32 },
}

pub type Result<T> = std::result::Result<T, Error>;
