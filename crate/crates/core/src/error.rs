use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("relation `{0}` contains a path of length < 2")]
    RelationTooShort(String),
    #[error("relation `{0}` mixes paths with different endpoints")]
    MixedEndpoints(String),
    #[error("path `{0}` does not compose")]
    BrokenPath(String),
    #[error("admissibility not witnessed up to path length {0}")]
    NotAdmissible(usize),
    #[error("vertex subset is not convex: path {0} leaves the subset")]
    NotConvex(String),
    #[error("representations live over different quivers")]
    QuiverMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representation violates relation `{0}`")]
    RelationViolated(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
    #[error("invalid short exact sequence: {0}")]
    NotExact(String),
    #[error("endomorphism algebra of a module of dimension {0:?} does not split over the rationals")]
    NotSplit(Vec<usize>),
    #[error("projective resolution truncated at degree {0}")]
    Truncated(usize),
    #[error("global dimension is infinite or exceeds {0}")]
    InfiniteGlobalDimension(usize),
    #[error("algebra is not strict shod")]
    NotStrictShod,
    #[error("catalog is not exhaustive: {0}")]
    CatalogIncomplete(String),
    #[error("tilting verification failed: {0}")]
    TiltingCheckFailed(String),
    #[error("module is not in add T: {0}")]
    NotInAddT(String),
    #[error("not a witnessed minimal degeneration: {0}")]
    NotMinimalDegeneration(String),
    #[error("search budget exhausted: {0}")]
    Budget(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
