use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),
    #[error("invalid field spec: {0}")]
    InvalidSpec(String),
    #[error("field of size {p}^{degree} exceeds the enumeration bound {bound}")]
    DegreeOverflow { p: u64, degree: u32, bound: u64 },
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    OrderOverflow { order: String, bound: u64 },
    #[error("the zero element has no multiplicative order")]
    ZeroElement,
    #[error("{q} and {ell} are not coprime")]
    NotCoprime { q: u64, ell: u64 },
    #[error("ell = {0} equals the characteristic")]
    EllEqualsP(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("cofactor and elimination inverses disagree")]
    InverseMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("product expansion is not additive at exponent {0}")]
    NonAdditiveExpansion(usize),
    #[error("Moore determinant vanishes")]
    SingularMoore,
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("nontrivial stabilizer: {gamma} fixes {point}")]
    StabilizerViolation { gamma: String, point: String },
    #[error("extension ladder exhausted at cap {0}")]
    LadderExhausted(u32),
    #[error("fiber has {found} points, expected {expected}")]
    FiberSizeMismatch { found: u64, expected: u64 },
    #[error("matrix is not unitriangular")]
    NotUnitriangular,
    #[error("membership violation: {0}")]
    MembershipViolation(String),
    #[error("normal form did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("elimination index out of range at root ({0}, {1})")]
    BoundaryIndex(usize, usize),
    #[error("companion mismatch: expected {expected}, found {found}")]
    CompanionMismatch { expected: String, found: String },
    #[error("series truncation {given} is below the top generator degree {needed}")]
    TruncationTooSmall { given: usize, needed: usize },
    #[error("identity failure: {0}")]
    IdentityFailure(String),
    #[error("fields are incompatible: {0}")]
    Incompatible(String),
}
