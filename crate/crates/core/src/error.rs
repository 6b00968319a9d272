use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex not in graph: {0}")]
    UnknownVertex(String),
    #[error("dart not in graph: {0}")]
    UnknownDart(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("not a graph morphism: {0}")]
    NotAMorphism(String),
    #[error("fiber product requires coverings")]
    FiberProductRequiresCoverings,
    #[error("connected graph required")]
    NotConnected,
    #[error("no common universal cover")]
    NoCommonUniversalCover,
    #[error("non-reduced path")]
    NonReducedPath,
    #[error("path does not compose at position {0}")]
    BrokenPath(usize),
    #[error("generator index {0} out of range")]
    GeneratorOutOfRange(usize),
    #[error("non-associative composition on triple ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),
    #[error("action axiom ({axiom}) violated: {detail}")]
    ActionAxiom { axiom: char, detail: String },
    #[error("orbit-stabilizer violation: |Γ(x,-)| = {total}, |Stab| = {stabilizer}, |orbit| = {orbit}")]
    OrbitStabilizer {
        total: usize,
        stabilizer: usize,
        orbit: usize,
    },
    #[error("closure axioms unmet at radius {radius}: {detail}")]
    ClosureAxioms { radius: usize, detail: String },
    #[error("local system refused: {0}")]
    SystemRefused(String),
    #[error("internal verification failure: {0}")]
    Verification(String),
    #[error("phi escaped the discovered groupoid: {0}")]
    PhiEscaped(String),
    #[error("witness evaluation failed: {0}")]
    Witness(String),
    #[error("seed rejected: {0}")]
    SeedRejected(String),
    #[error("insufficient seeds: {0}")]
    InsufficientSeeds(String),
    #[error("orientation required: subdivide ({0})")]
    OrientationRequired(String),
    #[error("gluing equation imbalance at face {0}")]
    GluingImbalance(String),
    #[error("regular graph required")]
    NotRegular,
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("budget exceeded")]
    BudgetExceeded,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("missing parameters: {0}")]
    MissingParameters(String),
    #[error("schema error at {location}: {detail}")]
    Schema { location: String, detail: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
