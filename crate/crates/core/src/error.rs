use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("duplicate edge ({from}, {to})")]
    DuplicateEdge { from: usize, to: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("edge ({from}, {to}) has non-positive weight {weight}")]
    NonpositiveWeight { from: usize, to: usize, weight: f64 },
    #[error("node id {id} out of range for {n} nodes")]
    IdOutOfRange { id: usize, n: usize },
    #[error("need at least {min} nodes, got {n}")]
    NTooSmall { n: usize, min: usize },
    #[error("{what}: size {n} exceeds the guard of {max}")]
    NTooLarge { what: &'static str, n: usize, max: usize },
    #[error("graph is not undirected")]
    NotUndirected,
    #[error("graph is not connected")]
    NotConnected,
    #[error("Lyapunov solve failed: {0}")]
    LyapunovSolveFailed(String),
    #[error("graph is not a tree")]
    NotTree,
    #[error("tree has non-unit edge weights")]
    NonUnitWeights,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid diameter {d} for {n} nodes")]
    InvalidDiameter { n: usize, d: usize },
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("tree is not a caterpillar")]
    NotCaterpillar,
    #[error("caterpillar has at most one bouquet")]
    SingleBouquet,
    #[error("tree is a caterpillar")]
    IsCaterpillar,
    #[error("tree is already the terminal tree N_{{{n},{d}}}")]
    IsTerminal { n: usize, d: usize },
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("time step {dt} violates the stability bound {bound}")]
    UnstableStep { dt: f64, bound: f64 },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
