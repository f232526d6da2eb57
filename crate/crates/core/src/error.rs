use thiserror::Error;

/// Errors raised by the algebraic core (orders, polynomials, bases).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("lexicographic order is not a well-order on the free monoid; use deglex")]
    LexOnNoncommutative,
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("order precedence must list every generator exactly once")]
    BadPrecedence,
    #[error("generator degrees must be positive")]
    BadDegree,
    #[error("polynomials belong to different presentations")]
    PresentationMismatch,
    #[error("maximum degree {max_degree} is below the degree {degree} of an input relation")]
    DegreeBoundTooSmall { max_degree: u32, degree: u32 },
    #[error("degree {requested} exceeds the certified degree {certified}")]
    BeyondCertification { requested: u32, certified: u32 },
    #[error("obstruction no longer matches the basis")]
    StaleObstruction,
    #[error("leading words do not form an antichain: {0}")]
    NotAntichain(String),
    #[error("single-letter obstruction {0}: drop the generator from the presentation instead")]
    LetterObstruction(String),
    #[error("series inversion needs a nonzero constant term")]
    NonInvertibleSeries,
    #[error("series needs constant term 1")]
    ConstantTermNotOne,
    #[error("series have different truncation orders ({0} vs {1})")]
    TruncationMismatch(usize, usize),
    #[error("chain set truncated at level {max_level} cannot certify degree {degree}")]
    InsufficientChains { max_level: usize, degree: u32 },
    #[error("operation needs homogeneous relations")]
    Inhomogeneous,
    #[error("element at level {level} is not in the kernel of the differential")]
    NotInKernel { level: i32 },
    #[error("leading word {word} has no unique factorization as a {level}-chain times a normal word")]
    NoChainFactorization { level: i32, word: String },
    #[error("resolution invariant violated: {0}")]
    ResolutionInvariant(String),
    #[error("n must be at least 1")]
    BadFamilyIndex,
    #[error("free products need noncommutative presentations")]
    CommutativeFreeProduct,
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

/// Errors from reading presentation text; every variant carries the
/// 1-based line and column where the problem was detected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{line}:{column}: unknown generator `{name}`")]
    UnknownGenerator { line: usize, column: usize, name: String },
    #[error("{line}:{column}: duplicate generator `{name}`")]
    DuplicateGenerator { line: usize, column: usize, name: String },
    #[error("{line}:{column}: relation is zero")]
    ZeroRelation { line: usize, column: usize },
    #[error("{line}:{column}: {source}")]
    Algebra {
        line: usize,
        column: usize,
        source: AlgebraError,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, column, .. }
            | ParseError::UnknownGenerator { line, column, .. }
            | ParseError::DuplicateGenerator { line, column, .. }
            | ParseError::ZeroRelation { line, column }
            | ParseError::Algebra { line, column, .. } => (*line, *column),
        }
    }
}
