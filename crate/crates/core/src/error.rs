use std::fmt;

use thiserror::Error;

/// The algebraic laws checked by [`crate::algebra::FiniteRl::validate`], in
/// the order they are checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Law {
    JoinIdempotent,
    JoinCommutative,
    JoinAssociative,
    MeetExists,
    MultCommutative,
    MultAssociative,
    MultUnit,
    Distributivity,
    Integrality,
    KPotency,
    Residuation,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::JoinIdempotent => "join-idempotent",
            Law::JoinCommutative => "join-commutative",
            Law::JoinAssociative => "join-associative",
            Law::MeetExists => "meet-exists",
            Law::MultCommutative => "mult-commutative",
            Law::MultAssociative => "mult-associative",
            Law::MultUnit => "mult-unit",
            Law::Distributivity => "distributivity",
            Law::Integrality => "integrality",
            Law::KPotency => "k-potency",
            Law::Residuation => "residuation",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed tables: {0}")]
    MalformedTables(String),

    #[error("law {law} violated, witnesses {witnesses:?}")]
    LawViolation { law: Law, witnesses: Vec<usize> },

    #[error("operation undefined on the trivial (one-element) algebra")]
    TrivialAlgebra,

    #[error("algebra is not subdirectly irreducible")]
    NotSi,

    #[error("potency mismatch: k={left} vs k={right}")]
    KMismatch { left: u32, right: u32 },

    #[error("formula is not refuted by the given valuation")]
    NotRefuted,

    #[error("unbound variable `{0}`")]
    UnboundVariable(String),

    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
