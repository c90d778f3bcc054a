use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {what} has length {got}, expected {expected}")]
    DimensionMismatch {
        what: String,
        expected: usize,
        got: usize,
    },

    #[error("invalid ground set: {0}")]
    InvalidGround(String),

    #[error("family `{family}` is defined on binary ground sets only (element {element} has bound {bound})")]
    BinaryOnly {
        family: &'static str,
        element: usize,
        bound: u32,
    },

    #[error("concave table is not concave at k = {0}")]
    NotConcave(usize),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("box of {size} points exceeds the enumeration cap {cap}")]
    BoxTooLarge { size: u128, cap: u64 },

    #[error("ground set of {m} elements exceeds the brute-force cap {cap}")]
    GroundTooLarge { m: usize, cap: usize },

    #[error("min-norm-point did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("penalized closure solve still violates arc ({0}, {1}) after {2} penalty doublings")]
    PenaltyExhausted(usize, usize, usize),

    #[error("index {index} out of range for {what} of size {len}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("constraint {index} is infeasible over the box: {reason}")]
    BoxInfeasible { index: usize, reason: String },

    #[error("constraint system is infeasible")]
    Infeasible,

    #[error("constraint {0} is not monotone")]
    NotMonotone(usize),

    #[error("level assignment for element {element} is not a prefix of ones")]
    ChainViolation { element: usize },

    #[error("binarized system needs {needed} variables, over the budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("rounded point violates constraint {index}; {reason}")]
    RoundingInfeasible { index: usize, reason: String },

    #[error("no approximation guarantee: {0}")]
    Refused(String),

    #[error("closure graph precondition: {0}")]
    NotClosureGraph(String),

    #[error("edge ({0}, {1}) does not cross the bipartition")]
    NotBipartite(usize, usize),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("parse error at {context}: {message}")]
    Parse { context: String, message: String },
}

impl Error {
    pub(crate) fn dims(what: impl Into<String>, expected: usize, got: usize) -> Self {
        Error::DimensionMismatch {
            what: what.into(),
            expected,
            got,
        }
    }
}
