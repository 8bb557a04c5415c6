use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three groups, and [`Error::is_theorem_violation`]
/// distinguishes the middle one:
/// bad input (wrong rank, unknown index, a matrix that is not
/// skew-symmetrizable), internal evidence that an expected structural fact
/// failed (inexact division during mutation, a non-unimodular degree matrix,
/// a malformed coefficient-free part), and resource limits (truncated graph
/// where a complete one is required).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("the zero polynomial has no exponent data")]
    ZeroPolynomial,

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("matrix is not skew-symmetrizable: {0}")]
    NotSkewSymmetrizable(String),

    #[error("matrix dimensions invalid: {0}")]
    BadDimensions(String),

    #[error("operation requires principal coefficients")]
    PrincipalModeRequired,

    #[error("negative entry in a monomial exponent vector")]
    NegativeExponent,

    #[error("coefficient-free part of an expansion is not a single monic monomial: {0}")]
    MalformedExpansion(String),

    #[error("degree matrix has determinant {0}, expected +1 or -1")]
    NonUnimodular(i64),

    #[error("restriction block is singular or not unimodular (determinant {0})")]
    SingularBlock(i64),

    #[error("graph was truncated at the node limit but the operation needs the complete graph")]
    TruncatedGraph,

    #[error("polynomial is not a cluster variable of the explored graph")]
    UnknownVariable,

    #[error("mutation path step {0} leaves the allowed direction subset")]
    PathOutsideSubset(usize),

    #[error("no partner seed passes the degree-pair criterion for the given subset")]
    GPairNotFound,

    #[error("{0} inequivalent partner seeds pass the degree-pair criterion, expected one")]
    GPairNotUnique(usize),

    #[error("denominator classification disagrees with the degree-matrix sign: {0}")]
    ClassificationMismatch(String),

    #[error("variables are not pairwise compatible")]
    IncompatibleSet,

    #[error("no explored seed contains the requested compatible set")]
    ClusterNotFound,

    #[error("monomial is a cluster monomial of the reference seed")]
    ClusterMonomialOfTarget,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures that can only arise from a falsified structural
    /// expectation, never from bad input.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(
            self,
            Error::InexactDivision(_)
                | Error::MalformedExpansion(_)
                | Error::NonUnimodular(_)
                | Error::SingularBlock(_)
                | Error::GPairNotFound
                | Error::GPairNotUnique(_)
                | Error::ClassificationMismatch(_)
                | Error::ClusterNotFound
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
