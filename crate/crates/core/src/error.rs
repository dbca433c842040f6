//! Error type shared by every module of the crate.
//!
//! Errors are split roughly into: input problems (parse, document, lookup),
//! mathematical verdicts that are genuine failures (inconsistent grading, a
//! map that is not a generalized action), resource guardrails, and internal
//! cross-check mismatches that should never fire on correct code.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Vector or matrix shapes do not line up.
    #[error("dimension mismatch: expected {expected}, got {got} ({context})")]
    DimensionMismatch {
        expected: usize,
        got: usize,
        context: String,
    },

    /// A degree map does not define a grading: some component product spreads
    /// over more than one component.
    #[error(
        "inconsistent grading: product of components ({s}, {t}) meets both \
         component {first} and component {second}"
    )]
    InconsistentGrading {
        s: String,
        t: String,
        first: String,
        second: String,
    },

    /// The degree map in a document is malformed (wrong length or label index
    /// out of range).
    #[error("invalid degree map: {detail}")]
    InvalidDegreeMap { detail: String },

    /// A structural precondition on the acting algebra fails (unit does not
    /// act as identity, representation not multiplicative, acting algebra
    /// not associative or unital).
    #[error("module law violated: {detail}")]
    ModuleLawViolation { detail: String },

    /// The linear system for the coproduct witnesses of a basis element has
    /// no solution, so the maps do not define a generalized action.
    #[error(
        "not a generalized action: no coproduct witness for {h}; \
         defect at basis pair ({p}, {q}), coordinate {r}, value {value}"
    )]
    NotGeneralizedAction {
        h: String,
        p: usize,
        q: usize,
        r: usize,
        value: String,
    },

    /// Expression syntax error, with a byte offset into the input.
    #[error("syntax error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A rational literal could not be parsed.
    #[error("invalid rational literal {text:?}: {detail}")]
    BadRational { text: String, detail: String },

    /// A decoration refers to a label or index that the algebra's grading or
    /// action does not provide.
    #[error("unknown decoration {decoration}: {detail}")]
    UnknownDecoration { decoration: String, detail: String },

    /// A polynomial uses a variable the assignment does not cover.
    #[error("unassigned variable x{var}")]
    UnassignedVariable { var: usize },

    /// An operation that requires a multilinear polynomial got something else.
    #[error("polynomial is not multilinear: {detail}")]
    NotMultilinear { detail: String },

    /// A resource guardrail fired. Overridable where documented.
    #[error("budget exceeded: {what} (limit {limit}, requested {requested})")]
    BudgetExceeded {
        what: String,
        limit: u64,
        requested: u64,
    },

    /// The associative-monomial fast path was requested for an algebra that
    /// is not verifiably associative.
    #[error("algebra {name} is not associative; drop the assoc flag")]
    NotAssociative { name: String },

    /// Two independent computations of the same quantity disagree. This is an
    /// internal bug sentinel, not a user error.
    #[error("cross-check mismatch in {context}: {left} vs {right}")]
    CrossCheckMismatch {
        context: String,
        left: String,
        right: String,
    },

    /// A partition or tableau argument is malformed.
    #[error("invalid partition: {detail}")]
    InvalidPartition { detail: String },

    /// A numeric argument lies outside the documented domain.
    #[error("domain violation: {detail}")]
    DomainViolation { detail: String },

    /// An algebra document violates the schema.
    #[error("invalid algebra document: {detail}")]
    Document { detail: String },

    /// Catalog lookup failure; lists what is available.
    #[error("unknown catalog entry {name:?}; available: {available}")]
    UnknownCatalog { name: String, available: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
