use thiserror::Error;

/// Errors raised by measure construction, transport solving, metric
/// evaluation and the isometry constructors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative weight {weight} at atom {index}")]
    NegativeWeight { index: usize, weight: f64 },

    #[error("weights sum to {sum}, which is not within {tolerance} of 1")]
    SumOutOfTolerance { sum: f64, tolerance: f64 },

    #[error("point {point} is not a member of the {space}")]
    PointNotInSpace { point: String, space: String },

    #[error("image point {point} is not a member of the {space}")]
    ImageNotInSpace { point: String, space: String },

    #[error("operation is not supported on discrete spaces")]
    DiscreteSpaceUnsupported,

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: String, actual: String },

    #[error("invalid order p = {0}; p must be a real number >= 1")]
    InvalidP(f64),

    #[error("weights are not balanced: source mass {source_mass}, target mass {target_mass}")]
    InfeasibleWeights { source_mass: f64, target_mass: f64 },

    #[error("network simplex exceeded {0} pivots")]
    IterationLimit(usize),

    #[error("instance too large for exhaustive enumeration: {rows} + {cols} > {limit}")]
    TooLarge { rows: usize, cols: usize, limit: usize },

    #[error("expected a measure on the {expected}, got one on the {actual}")]
    WrongSpace { expected: String, actual: String },

    #[error("measures live on different spaces: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    #[error("support of size {size} exceeds the enumeration limit {limit}")]
    SupportTooLarge { size: usize, limit: usize },

    #[error("map is not a bijection: {0}")]
    NotBijective(String),

    #[error("image of the Dirac measure at {point} has {atoms} atoms")]
    ImageNotDirac { point: String, atoms: usize },

    #[error("degenerate random sample (norm {0:e})")]
    DegenerateSample(f64),

    #[error("invalid space descriptor: {0}")]
    InvalidSpace(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
