use thiserror::Error;

use crate::axioms::Axiom;

/// Everything that can go wrong inside the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("enumeration of {count} items exceeds the configured cap of {cap}")]
    UniverseTooLarge { count: u128, cap: u64 },

    #[error("unknown alternative `{0}`")]
    UnknownAlternative(String),

    #[error("alternative index {index} is outside a universe of {size}")]
    AlternativeOutOfRange { index: usize, size: usize },

    #[error("not a strict linear order: {0}")]
    NotALinearOrder(String),

    #[error("mapping is not a bijection: {0}")]
    NonBijective(String),

    #[error("voter id must be a positive integer, got {0}")]
    InvalidVoterId(i64),

    #[error("voter {0} is already in the society")]
    DuplicateVoter(u32),

    #[error("voter {0} is not in the society")]
    UnknownVoter(u32),

    #[error("cannot remove the last voter of a society")]
    LastVoterRemoval,

    #[error("a society must contain at least one voter")]
    EmptySociety,

    #[error("preferences in a profile must range over the same alternatives")]
    MixedUniverse,

    #[error("object universe needs between 2 and 6 objects, got {0}")]
    InvalidObjectCount(usize),

    #[error("universe needs between 1 and 64 alternatives, got {0}")]
    InvalidAlternativeCount(usize),

    #[error("operation requires a universe of object subsets")]
    NotSubsetsUniverse,

    #[error("preference of voter {voter} is outside the rule's domain ({domain})")]
    DomainViolation { voter: u32, domain: String },

    #[error("rule `{rule}` is not defined on this profile: {reason}")]
    OutsideRuleSupport { rule: String, reason: String },

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),

    #[error("axiom {axiom} does not apply here: {reason}")]
    AxiomNotApplicable { axiom: Axiom, reason: String },

    #[error("rule `{0}` is not tops-only and cannot be extended")]
    NotTopsOnly(String),

    #[error("no separable preference has top {0}")]
    UnrepresentableTop(String),

    #[error("invalid bounds: {0}")]
    InvalidBounds(String),

    #[error("rule `{rule}` reads more of a preference than its declared view: {detail}")]
    ViewContractViolated { rule: String, detail: String },

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error(transparent)]
    SerdeJson(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
