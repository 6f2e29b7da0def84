use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("at most 64 vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("{face} is not a face of the complex")]
    NotAFace { face: String },
    #[error("not a subcomplex: {face} is not a face of the ambient complex")]
    NotSubcomplex { face: String },
    #[error("permutation is not a simplicial automorphism: the image of {face} is not a face")]
    NotAutomorphism { face: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("the permutation has order {order}, which is not {p}")]
    WrongOrder { order: usize, p: u32 },
    #[error("the action is not free")]
    NotFree,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("operator does not satisfy M^{p} = I")]
    NotPeriodic { p: u32 },
    #[error("scalars live in Q(zeta_{found}), expected Q(zeta_{expected})")]
    FieldMismatch { expected: u32, found: u32 },
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("INSUFFICIENT_ISOTYPIC_SPACE: {orbits} vertex orbits but d = {d}")]
    InsufficientIsotypicSpace { orbits: usize, d: usize },
    #[error("ORBIT_MATES_SHARE_A_FACE: facet {facet} contains two vertices of one orbit")]
    OrbitMatesShareFace { facet: String },
    #[error("GENERICITY_EXHAUSTED: no l.s.o.p. found in {attempts} attempts")]
    GenericityExhausted { attempts: u32 },
    #[error("NONVANISHING_TAIL: quotient has dimension {dim} in degree {degree}")]
    NonvanishingTail { degree: usize, dim: usize },
    #[error("TOP_NOT_ONE_DIMENSIONAL: top graded piece has dimension {dim}")]
    TopNotOneDimensional { dim: usize },
    #[error("the forms are not a linear system of parameters")]
    NotLsop,
    #[error("the forms are not homogeneous of a single character")]
    NotHomogeneous,
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable machine-readable code, used as the guard reason in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "VERTEX_OUT_OF_RANGE",
            Error::TooManyVertices(_) => "TOO_MANY_VERTICES",
            Error::NotAFace { .. } => "NOT_A_FACE",
            Error::NotSubcomplex { .. } => "NOT_A_SUBCOMPLEX",
            Error::NotAutomorphism { .. } => "NOT_AN_AUTOMORPHISM",
            Error::InvalidPermutation(_) => "INVALID_PERMUTATION",
            Error::NotPrime(_) => "NOT_PRIME",
            Error::WrongOrder { .. } => "WRONG_ORDER",
            Error::NotFree => "NOT_FREE",
            Error::NotSquare { .. } => "NOT_SQUARE",
            Error::NotPeriodic { .. } => "NOT_PERIODIC",
            Error::FieldMismatch { .. } => "FIELD_MISMATCH",
            Error::CapExceeded(_) => "CAP_EXCEEDED",
            Error::InsufficientIsotypicSpace { .. } => "INSUFFICIENT_ISOTYPIC_SPACE",
            Error::OrbitMatesShareFace { .. } => "ORBIT_MATES_SHARE_A_FACE",
            Error::GenericityExhausted { .. } => "GENERICITY_EXHAUSTED",
            Error::NonvanishingTail { .. } => "NONVANISHING_TAIL",
            Error::TopNotOneDimensional { .. } => "TOP_NOT_ONE_DIMENSIONAL",
            Error::NotLsop => "NOT_LSOP",
            Error::NotHomogeneous => "NOT_HOMOGENEOUS",
            Error::Invariant(_) => "INVARIANT_VIOLATED",
            Error::Invalid(_) => "INVALID_INPUT",
            Error::Json(_) => "JSON",
            Error::Io(_) => "IO",
        }
    }
}
