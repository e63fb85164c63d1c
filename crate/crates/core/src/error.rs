use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
///
/// [`Error::exit_code`] maps each variant onto the command-line contract:
/// 2 for usage problems, 3 for certification failures, 4 for numerical ones.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("constant term must be 1, found {0}")]
    ConstantTerm(String),
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series must have order at least 1")]
    EmptySeries,
    #[error("requested order {requested} exceeds available order {available}")]
    OrderTooLarge { requested: usize, available: usize },
    #[error("log coefficient needs n > k >= 0, got k={k}, n={n}")]
    LogCoeffDomain { k: usize, n: usize },
    #[error("n={n} exceeds the exact limit {limit}; use the scaled computation instead")]
    ExactLimit { n: usize, limit: usize },
    #[error("quadrature refinement failed: {0}")]
    Refinement(String),
    #[error("pole at {0}")]
    Pole(String),
    #[error("hypergeometric parameters outside supported regimes: {0}")]
    HypRegime(String),
    #[error("argument outside evaluation window: {0}")]
    Domain(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("usage: {0}")]
    Usage(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Certification(_) | Error::Invariant(_) => 3,
            Error::Refinement(_) | Error::Precision(_) => 4,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
