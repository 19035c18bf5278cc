use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("sign vectors over different ground sets ({left} vs {right} elements)")]
    GroundSetMismatch { left: usize, right: usize },
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("ground set of {0} elements exceeds the supported maximum")]
    GroundSetTooLarge(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("duplicate covector {0}")]
    DuplicateCovector(String),
    #[error("{0} is not a covector of the system")]
    NotACovector(String),
    #[error("{0} is not a tope")]
    NotATope(String),
    #[error("sign pattern {0} does not have full support")]
    NotFullSupport(String),
    #[error("positive and negative parts of a topal fiber overlap")]
    OverlappingFiber,
    #[error("the system has no all-zero covector")]
    MissingZero,
    #[error("the system is not simple: {0}")]
    NotSimple(String),
    #[error("the system is not a COM: {0}")]
    NotCom(String),
    #[error("the system has no topes")]
    NoTopes,
    #[error("{0} is not an element of the poset")]
    NotInPoset(String),
    #[error("poset elements {0} and {1} are not comparable in the required direction")]
    Incomparable(String, String),
    #[error("order relation contains a cycle through {0}")]
    CyclicOrder(String),
    #[error("size guard exceeded: {what} has {size} > {limit}")]
    SizeGuard { what: &'static str, size: usize, limit: usize },
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("matrix dimension mismatch: {0}")]
    Dimension(String),
    #[error("label mismatch: {0}")]
    LabelMismatch(String),
    #[error("invalid element order: {0}")]
    InvalidOrder(String),
    #[error("{0} is not a linear extension")]
    NotLinearExtension(String),
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("random generation failed after {0} attempts")]
    GenerationFailed(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
