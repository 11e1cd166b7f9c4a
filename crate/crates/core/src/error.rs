use thiserror::Error;

/// Which metric axiom a candidate distance matrix failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    NonSquare,
    NonZeroDiagonal,
    Negative,
    ZeroDistance,
    Symmetry,
    Triangle,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// `(i, j, k)` are the witnesses; for the triangle axiom `d(i,j) > d(i,k) + d(k,j)`.
    #[error("metric axiom {axiom:?} violated at ({i}, {j}, {k})")]
    AxiomViolation {
        axiom: Axiom,
        i: usize,
        j: usize,
        k: usize,
    },
    #[error("edge list does not form a tree over {0} strategies")]
    NotATree(usize),
    #[error("positions must be strictly increasing (index {0})")]
    NotSorted(usize),
    #[error("cycle metric needs at least 3 points, got {0}")]
    TooSmall(usize),
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("node {0} is not strategic")]
    NotStrategic(usize),
    #[error("instance has {0} strategies, expected exactly 2")]
    NotTwoStrategies(usize),
    #[error("search space of {size} exceeds budget {budget}")]
    SearchTooLarge { size: String, budget: u64 },
    #[error("metric is not a tree metric")]
    NotTreeMetric,
    #[error("tree has zero total weight; every node is a median")]
    ZeroTotalWeight,
    #[error("node {node} has {found} fixed neighbours, expected {expected}")]
    WrongFixedDegree {
        node: usize,
        found: usize,
        expected: usize,
    },
    #[error("best-response and social-response median sets are disjoint for player {0}")]
    EmptyIntersection(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("player {0} has no strictly improving deviation")]
    NotImproving(usize),
    #[error("operation requires alpha = 1/2, got {0}")]
    WrongAlpha(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for failures that can only mean a bug or a falsified guarantee,
    /// as opposed to bad input or an exhausted budget.
    pub fn is_theorem_violation(&self) -> bool {
        matches!(self, Error::EmptyIntersection(_) | Error::BoundViolated(_))
    }

    /// Search-size error; sizes past 24 digits are shown as a power of ten.
    pub fn search_too_large(size: &num_bigint::BigUint, budget: u64) -> Self {
        let digits = size.to_string();
        let size = if digits.len() > 24 {
            format!("about 10^{}", digits.len() - 1)
        } else {
            digits
        };
        Error::SearchTooLarge { size, budget }
    }

    pub fn is_resource(&self) -> bool {
        matches!(self, Error::SearchTooLarge { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
