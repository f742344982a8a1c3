use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FairError {
    #[error("index out of range: {0}")]
    InvalidIndex(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("incomplete allocation: {0}")]
    IncompleteAllocation(String),
    #[error("advice mismatch: {0}")]
    AdviceMismatch(String),
    #[error("adversary stream inconsistent with its advice: {0}")]
    AdversaryInconsistent(String),
    #[error("brute-force budget exceeded: n = {n}, m = {m} (limit n <= {max_agents}, m <= {max_goods})")]
    BruteForceBudgetExceeded {
        n: usize,
        m: usize,
        max_agents: usize,
        max_goods: usize,
    },
    #[error("invalid advice: {0}")]
    InvalidAdvice(String),
    #[error("valuations are not identical at good {good}")]
    IdenticalViolation { good: usize },
    #[error("multiset cardinalities differ: {0}")]
    CardinalityMismatch(String),
    #[error("picking sequence has length {sequence}, but there are {goods} goods")]
    SequenceLengthMismatch { sequence: usize, goods: usize },
    #[error("profile is not identically ordered: agent {agent}")]
    NotIdo { agent: usize },
    #[error("agent {agent} values good {good} at {value}, which is not in its predicted multiset")]
    PredictionViolated {
        agent: usize,
        good: usize,
        value: String,
    },
    #[error("no unused predicted values left for agent {agent}")]
    ExhaustedPredictions { agent: usize },
    #[error("invalid total interval for agent {agent}: {reason}")]
    InvalidInterval { agent: usize, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = FairError> = std::result::Result<T, E>;
