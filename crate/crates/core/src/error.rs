use thiserror::Error;

/// Violations reported while validating an explicit composition table.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("missing composite {g} ∘ {f}")]
    MissingComposite { g: String, f: String },
    #[error("associativity fails for {h} ∘ {g} ∘ {f}")]
    AssociativityViolation { h: String, g: String, f: String },
    #[error("identity law fails: {identity} composed with {morphism}")]
    IdentityViolation { identity: String, morphism: String },
    #[error("{item} refers to unknown identifier `{name}`")]
    DanglingEndpoint { item: String, name: String },
    #[error("duplicate identifier `{0}`")]
    DuplicateIdentifier(String),
    #[error("{g} ∘ {f} is not a composable pair")]
    NotComposable { g: String, f: String },
    #[error("composite {g} ∘ {f} = {result} has the wrong source or target")]
    CompositeEndpoints { g: String, f: String, result: String },
    #[error("conflicting table entries for {g} ∘ {f}")]
    ConflictingComposite { g: String, f: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("invalid functor: {0}")]
    Functor(String),
    #[error("invalid natural transformation: {0}")]
    NatTransform(String),
    #[error("invalid poset: {0}")]
    Poset(String),
    #[error("invalid set functor: {0}")]
    SetFunctor(String),
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("variance mismatch: {0}")]
    VarianceMismatch(String),
    #[error("gluing map is not monotone: {lower} <= {upper} but its values are not nested")]
    NonMonotoneLambda { lower: String, upper: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("enumeration budget of {limit} steps exceeded while {what}")]
    BudgetExceeded { what: String, limit: u64 },
    #[error("time limit reached while {what}")]
    Timeout { what: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
