use thiserror::Error;

/// Invalid model or operation parameters.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("node count {n} is too small (need at least {min})")]
    NodeCount { n: usize, min: usize },
    #[error("lattice degree k={k} must be even and satisfy 2 <= k <= n-2 (n={n})")]
    LatticeDegree { n: usize, k: usize },
    #[error("probability {value} is outside [0, 1]")]
    Probability { value: f64 },
    #[error("initial neighborhood radius h={h} is invalid for grid side n={n}")]
    GridRadius { n: usize, h: usize },
    #[error("h={h} must satisfy h < n-1 (n={n}) for the closed-form capacity")]
    RadiusTooLarge { n: usize, h: usize },
    #[error("decay exponent r={value} must be a finite non-negative real")]
    DecayExponent { value: f64 },
    #[error("confidence exponent d={value} must be positive and finite")]
    Confidence { value: f64 },
    #[error("node index {id} out of range for {n} nodes")]
    NodeOutOfRange { id: usize, n: usize },
    #[error("grid coordinate ({x}, {y}) out of range for side {n}")]
    GridCoordinate { x: usize, y: usize, n: usize },
    #[error("brute-force normalizer refuses grids with side beyond {max} (got {n})")]
    GridTooLargeForOracle { n: usize, max: usize },
    #[error("expected graph capacity c_w must be positive, got {value}")]
    NonPositiveCapacity { value: f64 },
    #[error("edge weight {value} must be a finite non-negative real")]
    EdgeWeight { value: f64 },
    #[error("source and target must be distinct")]
    SourceEqualsTarget,
    #[error("metric does not match the graph's node count ({metric_nodes} vs {graph_nodes})")]
    MetricMismatch {
        metric_nodes: usize,
        graph_nodes: usize,
    },
    #[error("trial count must be at least 1")]
    NoTrials,
}

/// Structural errors on graphs and cuts.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GraphError {
    #[error("self-loop at node {id}")]
    SelfLoop { id: usize },
    #[error("duplicate edge between {a} and {b}")]
    DuplicateEdge { a: usize, b: usize },
    #[error("cut side must be a non-empty proper subset of the nodes")]
    TrivialCut,
    #[error("brute-force min cut refuses graphs with more than {max} nodes (got {n})")]
    BruteForceTooLarge { n: usize, max: usize },
    #[error(transparent)]
    Param(#[from] ParamError),
}
