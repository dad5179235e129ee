use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    // graph construction
    #[error("pair {{{u}, {v}}} has no color assigned")]
    MissingPair { u: usize, v: usize },
    #[error("pair {{{u}, {v}}} is assigned more than once")]
    DuplicatePair { u: usize, v: usize },
    #[error("color {color} is outside 1..={r}")]
    ColorOutOfRange { color: usize, r: usize },
    #[error("bad pair state: {0}")]
    BadState(String),
    #[error("vertex {vertex} is out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("invalid graph parameters: {0}")]
    BadGraph(String),

    // partitions and sampling
    #[error("cannot split {n} vertices into {k} blocks")]
    BadOrder { n: usize, k: usize },
    #[error("cannot refine a block of size {min_block} into {parts} parts")]
    RefinementTooFine { min_block: usize, parts: usize },
    #[error("invalid partition: {0}")]
    BadPartition(String),
    #[error("invalid probability vector: {0}")]
    BadDistribution(String),

    // density
    #[error("vertex sets overlap")]
    OverlappingSets,
    #[error("vertex set is empty")]
    EmptySet,
    #[error("exhaustive regularity check needs sets of size at most {cap}, got {size}")]
    TooLargeForExhaustive { size: usize, cap: usize },
    #[error("m = {m} must satisfy 1 <= m < {len}")]
    BadM { m: usize, len: usize },
    #[error("sequence entries must be nonnegative")]
    NegativeValue,
    #[error("sub-blocks must partition the set into equal sizes: {0}")]
    UnequalSubBlocks(String),

    // decomposition
    #[error("graph too small: {0}")]
    GraphTooSmall(String),
    #[error("slice fraction {fraction} is below gamma = {gamma}")]
    SliceTooSmall { fraction: f64, gamma: f64 },
    #[error("invalid epsilon function: {0}")]
    BadEFunction(String),

    // embedding
    #[error("eta = {0} must lie strictly between 0 and 1")]
    BadEta(f64),
    #[error("pattern has {pattern} vertices but {parts} parts were given")]
    ArityMismatch { pattern: usize, parts: usize },

    // types and edit distance
    #[error("empty label at ({0}, {1})")]
    EmptyLabel(usize, usize),
    #[error("self label of vertex {0} is the whole color set")]
    FullSelfLabel(usize),
    #[error("labels of ({0}, {1}) and ({1}, {0}) disagree")]
    SymmetryViolation(usize, usize),
    #[error("arrow labels of ({0}, {1}) and ({1}, {0}) are not mirror images")]
    ArrowClosureViolation(usize, usize),
    #[error("label at ({0}, {1}) uses a color outside the type's color set")]
    LabelOutOfRange(usize, usize),
    #[error("kind mismatch: {0}")]
    KindMismatch(String),
    #[error("search space of {0} candidates is too large")]
    SearchSpaceTooLarge(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("graphs have {0} and {1} vertices")]
    SizeMismatch(usize, usize),
    #[error("exact search supports at most {cap} vertices, got {n}")]
    TooLargeForExact { n: usize, cap: usize },
    #[error("no graph on {0} vertices avoids the forbidden family")]
    EmptyProperty(usize),
    #[error("type family is empty")]
    EmptyFamily,
    #[error("forbidden family is invalid: {0}")]
    BadFamily(String),

    // io
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
