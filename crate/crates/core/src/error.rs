use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not in the group of (q+1)-th roots of unity")]
    NotInMu,
    #[error("field too large for this operation: {0}")]
    FieldTooLarge(String),
    #[error("invalid modulus 0x{modulus:x} for degree {m}: {reason}")]
    InvalidModulus { m: u32, modulus: u64, reason: String },
    #[error("tower constant 0x{0:x} does not have absolute trace 1")]
    InvalidTowerConstant(u32),
    #[error("unsupported extension degree {0} (supported: 1..=16)")]
    UnsupportedDegree(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parameters are inconsistent with the supplied triple: {0}")]
    ParameterInconsistency(String),
    #[error("theta2 is zero")]
    Theta2Zero,
    #[error("z1 is not an F_q root of the z-cubic")]
    NoRationalRoot,
    #[error("bivariate degree overflow: degree {0} exceeds the bound")]
    DegreeOverflow(usize),
    #[error("rewrite rule does not terminate: {0}")]
    NonTerminatingRule(String),
    #[error("both polynomials are constant in {0}")]
    BothConstantInVar(String),
    #[error("divisor is zero")]
    DivisorZero,
    #[error("exact division failed: {0}")]
    InexactDivision(String),
    #[error("exponent overflow in monomial")]
    ExponentOverflow,
    #[error("undefined name `{0}`")]
    UndefinedName(String),
    #[error("unknown script `{0}`")]
    UnknownScript(String),
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
