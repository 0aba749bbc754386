use thiserror::Error;

use crate::relation::ValidationReport;
use crate::structure::PumpingWitness;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown symbol `{symbol}`")]
    UnknownSymbol { symbol: String },

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("observation history of the empty word is the empty sequence; a nonempty word is required")]
    EmptyWord,

    #[error("histories must have equal length (got {left} and {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("state budget of {cap} states exceeded during {operation}")]
    StateBudgetExceeded { cap: usize, operation: &'static str },

    #[error("depth {depth} exceeds the enumeration budget of {max}")]
    DepthBudgetExceeded { depth: usize, max: usize },

    #[error("partition violated: state `{state}` is {problem}; input is not a minimal valid relation automaton")]
    PartitionViolation { state: String, problem: &'static str },

    #[error("constraints are infeasible: x{} != x{} but they are linked by equalities {chain:?}", .pair.0, .pair.1)]
    Infeasible { pair: (usize, usize), chain: Vec<(usize, usize)> },

    #[error("relation has unbounded branching and admits no regular observation function ({witness})")]
    Unrepresentable { witness: Box<PumpingWitness> },

    #[error("automaton does not recognise an indistinguishability relation")]
    InvalidRelation { report: Box<ValidationReport> },

    #[error("invalid automaton: {0}")]
    Malformed(String),

    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
}
