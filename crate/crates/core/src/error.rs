use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("{what} exceeds guard: {got} > {limit}")]
    Guard {
        what: &'static str,
        limit: usize,
        got: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("malformed table file {path}: {msg}")]
    Table { path: PathBuf, msg: String },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("group is not Dedekind")]
    NotDedekind,

    #[error("connection set is not a minimal generating set")]
    NotMinimal,

    #[error("connection set does not generate the group")]
    NotGenerating,

    #[error("commutator subgroup is not contained in the Frattini subgroup")]
    CommutatorNotInFrattini,

    #[error("coloring is not proper: edge ({0}, {1}) is monochromatic")]
    ImproperColoring(usize, usize),

    #[error("inconsistent input: {0}")]
    Inconsistency(String),

    #[error("budget exhausted; chromatic number lies in [{lower}, {upper}]")]
    BudgetExhausted { lower: usize, upper: usize },

    #[error("search budget exhausted after {nodes} nodes")]
    SearchBudget { nodes: u64 },

    #[error("cycle count exceeded ceiling of {0}")]
    CycleCeiling(u64),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
