use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the exit-code family the command-line front end
/// maps them to (see [`Error::exit_code`]).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    // invalid input / unsupported model
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("elements belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic 2 is not supported here")]
    EvenCharacteristic,
    #[error("singular curve: {0}")]
    SingularCurve(String),
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("unsupported curve model: {0}")]
    UnsupportedModel(String),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("{p} does not divide the field size {q}")]
    BadCharacteristic { p: u64, q: String },
    #[error("polynomial degree {0} outside the supported range 1..=4")]
    DegreeOutOfRange(usize),
    #[error("parameter a must be nonzero in F_p")]
    ZeroParameter,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    // numeric failures
    #[error("Weil bound violated: {0}")]
    WeilViolation(String),
    #[error("functional equation violated: {0}")]
    FunctionalEquation(String),
    #[error("non-integer coefficient while solving Newton identities at index {0}")]
    NonIntegerCoefficient(usize),
    #[error("root finder did not converge after {0} iterations")]
    NoConvergence(usize),
    #[error("tolerance {eps:e} is below the angle precision floor {floor:e}")]
    ToleranceBelowPrecision { eps: f64, floor: f64 },
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    #[error("quadrature could not reach tolerance {tol:e} (estimated error {achieved:e})")]
    ToleranceUnachievable { tol: f64, achieved: f64 },

    // size guards
    #[error("size guard exceeded: {0}")]
    SizeExceeded(String),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::FieldMismatch => "FieldMismatch",
            Error::DivisionByZero => "DivisionByZero",
            Error::EvenCharacteristic => "EvenCharacteristic",
            Error::SingularCurve(_) => "SingularCurve",
            Error::BadDegree(_) => "BadDegree",
            Error::UnsupportedModel(_) => "UnsupportedModel",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::BadCharacteristic { .. } => "BadCharacteristic",
            Error::DegreeOutOfRange(_) => "DegreeOutOfRange",
            Error::ZeroParameter => "ZeroParameter",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::WeilViolation(_) => "WeilViolation",
            Error::FunctionalEquation(_) => "FunctionalEquation",
            Error::NonIntegerCoefficient(_) => "NonIntegerCoefficient",
            Error::NoConvergence(_) => "NoConvergence",
            Error::ToleranceBelowPrecision { .. } => "ToleranceBelowPrecision",
            Error::PrecisionInsufficient(_) => "PrecisionInsufficient",
            Error::ToleranceUnachievable { .. } => "ToleranceUnachievable",
            Error::SizeExceeded(_) => "SizeExceeded",
            Error::GuardExceeded(_) => "GuardExceeded",
        }
    }

    /// Process exit code used by the `frobeq` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotPrime(_)
            | Error::FieldMismatch
            | Error::DivisionByZero
            | Error::EvenCharacteristic
            | Error::SingularCurve(_)
            | Error::BadDegree(_)
            | Error::UnsupportedModel(_)
            | Error::InvalidModulus(_)
            | Error::BadCharacteristic { .. }
            | Error::ZeroParameter => 2,
            Error::DegreeOutOfRange(_) | Error::InvalidArgument(_) => 1,
            Error::WeilViolation(_)
            | Error::FunctionalEquation(_)
            | Error::NonIntegerCoefficient(_)
            | Error::NoConvergence(_)
            | Error::ToleranceBelowPrecision { .. }
            | Error::PrecisionInsufficient(_)
            | Error::ToleranceUnachievable { .. } => 3,
            Error::SizeExceeded(_) | Error::GuardExceeded(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
