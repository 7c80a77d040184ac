use thiserror::Error;

/// Errors raised by graph construction and every analysis on top of it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {0:?} has non-positive measure {1}")]
    NonPositiveMeasure(String, f64),

    #[error("edge {0:?}-{1:?} has non-positive weight {2}")]
    NonPositiveWeight(String, String, f64),

    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),

    #[error("edge {0:?}-{1:?} listed more than once")]
    DuplicateEdge(String, String),

    #[error("vertex {0:?} listed more than once")]
    DuplicateVertex(String),

    #[error("edge endpoint {0:?} is not a vertex")]
    UnknownEndpoint(String),

    #[error("unknown vertex {0}")]
    UnknownVertex(String),

    #[error("vertices {0:?} and {1:?} are not adjacent")]
    NotAdjacent(String, String),

    #[error("vertex {target:?} is unreachable from {root:?}")]
    Unreachable { root: String, target: String },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph is not unweighted (weights in {{0,1}}, unit measures)")]
    NotUnweighted,

    #[error("function has {got} values but the graph has {expected} vertices")]
    DomainMismatch { expected: usize, got: usize },

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("eigensolver failure: {0}")]
    SolverFailure(String),

    #[error("index {index} out of range for {len} eigenvalues")]
    IndexOutOfRange { index: usize, len: usize },

    #[error(
        "inconsistent extension at {vertex:?}: via {via_first:?} gives {first}, via {via_second:?} gives {second}"
    )]
    InconsistentExtension {
        vertex: String,
        via_first: String,
        via_second: String,
        first: f64,
        second: f64,
    },

    #[error("no two-step path reaches {0:?} from the previous shells")]
    NoMidpointPath(String),

    #[error("extension is not an eigenfunction plus constant: residual {residual} at {vertex:?}")]
    NotEigenTrace { vertex: String, residual: f64 },

    #[error("vertex {0:?} is isolated")]
    IsolatedVertex(String),

    #[error("dimension parameter must be positive, got {0}")]
    NonPositiveDimension(f64),

    #[error("triangle through center {0:?}")]
    TriangleAtCenter(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("graph is not regular: {vertex:?} has degree {degree}, expected {expected}")]
    NotRegular {
        vertex: String,
        degree: usize,
        expected: usize,
    },

    #[error("curvature parameter must be positive, got {0}")]
    NonPositiveK(f64),

    #[error("minimal curvature {0} is not positive")]
    NonPositiveCurvature(f64),

    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("graph is not weakly spherically symmetric around {0:?}")]
    NotSymmetric(String),

    #[error("dimension {0} out of range")]
    DimensionOutOfRange(usize),

    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),

    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),

    #[error("graph JSON: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
