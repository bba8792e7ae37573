use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable `{0}` is not declared")]
    UnknownVariable(String),

    #[error("variable `{var}` has no state `{state}`")]
    UnknownState { var: String, state: String },

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("variable `{var}` must have at least two states")]
    ArityTooSmall { var: String },

    #[error("variable `{var}` has {arity} states; at most 64 are supported")]
    ArityTooLarge { var: String, arity: usize },

    #[error("literal for `{var}` must be a non-empty proper subset of its states")]
    InvalidLiteral { var: String },

    #[error("term is required to be simple (one state per literal)")]
    NotSimple,

    #[error("world assigns {got} variables, table has {want}")]
    BadWorld { got: usize, want: usize },

    #[error("instance does not satisfy the {0}")]
    DoesNotSatisfy(&'static str),

    #[error("instance is not in class `{0}`")]
    NotInClass(String),

    #[error("{what} needs {need} candidates, over the budget of {limit}")]
    Capacity {
        what: &'static str,
        need: u128,
        limit: u128,
    },

    #[error("circuit does not have the disjunction shape required here: {0}")]
    BadShape(String),

    #[error("circuit is not locally fixated on any instance")]
    NotFixated,

    #[error("disjunction children share variable `{0}`; circuit is not or-decomposable")]
    NotDecomposable(String),

    #[error("clauses {0} and {1} have no resolvable literal on `{2}`")]
    NotResolvable(String, String, String),

    #[error("decision graph node {node} is malformed: {reason}")]
    BadGraph { node: usize, reason: String },

    #[error("decision graph failed validation: {0}")]
    InvalidGraph(String),

    #[error("class `{0}` is not declared by the graph")]
    UnknownClass(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
