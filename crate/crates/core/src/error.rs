use thiserror::Error;

use crate::terms::Position;

/// Errors raised anywhere in the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("symbol `{symbol}` expects {expected} argument(s), found {found}")]
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("identifier `{0}` uses a reserved prefix")]
    ReservedIdentifier(String),

    #[error("position {position} is not a valid position of {term}")]
    InvalidPosition { position: Position, term: String },

    #[error("term `{0}` is not ground")]
    NotGround(String),

    #[error("rule `{0}` has a variable left-hand side")]
    VariableLhs(String),

    #[error("variable `{var}` occurs in the right-hand side of `{rule}` but not in its left-hand side")]
    UnboundRhsVariable { rule: String, var: String },

    #[error("rewrite system is not left-linear (rule `{0}`)")]
    NotLeftLinear(String),

    #[error("rewrite system is not linear and growing (rule `{0}`)")]
    NotLinearGrowing(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("automaton is not deterministic and complete")]
    NotDeterministicComplete,

    #[error("automaton has no state for pattern `{0}`")]
    MissingPatternState(String),

    #[error("automaton has inaccessible state {0}")]
    InaccessibleState(usize),

    #[error("the bullet symbol cannot head a transition of the pair automaton")]
    BulletInPairAutomaton,

    #[error("pair-state exploration exceeded the cap of {0} states")]
    StateCap(usize),

    #[error("pair-state exploration exceeded the work budget of {0}")]
    WorkBudget(usize),

    #[error("internal consistency check failed: {0}")]
    Validation(String),
}

impl Error {
    /// True for exhausted exploration limits, where the verdict is unknown
    /// rather than wrong.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::StateCap(_) | Error::WorkBudget(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
