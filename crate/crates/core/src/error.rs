use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("q-integer requested with q = 1")]
    QEqualsOne,
    #[error("zero input")]
    ZeroInput,
    #[error("denominator vanishes under substitution")]
    DenominatorVanishes,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported parameter binding: {0}")]
    UnsupportedParameter(String),
    #[error("degenerate lattice basis")]
    DegenerateBasis,
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("algebra is not scalar-graded: {0}")]
    NotScalarGraded(String),
    #[error("G_m is not a group: {0}")]
    GroupnessViolated(String),
    #[error("commutation scalar is not a root of unity")]
    NotRootOfUnity,
    #[error("torus factor has infinite order")]
    InfiniteOrder,
    #[error("no finite-dimensional weight spaces: {0}")]
    NoFiniteDimensionalWeightSpaces(String),
    #[error("window bound required for an infinite index set")]
    WindowRequired,
    #[error("certification failed: {0}")]
    CertificationFailed(String),
    #[error("module is infinite-dimensional")]
    InfiniteDimension,
    #[error("case mismatch: {0}")]
    CaseMismatch(String),
    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
