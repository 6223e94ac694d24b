use thiserror::Error;

/// Errors raised by the library.
///
/// `InvariantViolation` is a bug signal: it is returned when a cross-check
/// that must hold by theorem fails, and is never an expected outcome.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CoreError {
    #[error("domain has {size} elements, which exceeds the cap of {cap}")]
    DomainTooLarge { size: usize, cap: usize },

    #[error("graph has {size} vertices, which exceeds the cap of {cap}")]
    VertexCapExceeded { size: usize, cap: usize },

    #[error("enumeration bound {size} exceeds the hard limit of {cap}")]
    SizeTooLarge { size: usize, cap: usize },

    #[error("a set system needs a nonempty family")]
    EmptyFamily,

    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("duplicate member {0}")]
    DuplicateMember(String),

    #[error("duplicate name {0}")]
    DuplicateName(String),

    #[error("unknown element {0}")]
    UnknownElement(String),

    #[error("member {0} is not in the family")]
    MemberNotInFamily(String),

    #[error("member {0} is not a subset of the domain")]
    MemberOutsideDomain(String),

    #[error("element {0} labels no edge of the one-inclusion graph")]
    NotEssential(String),

    #[error("the vertex set is empty")]
    EmptyVertexSet,

    #[error("the dual of a system on an empty domain would have an empty family")]
    EmptyDomainDual,

    #[error("the system has no essential elements, so the essential dual is undefined")]
    NoEssentialElements,

    #[error("operation requires a loopless graph")]
    LoopsNotSupported,

    #[error("an edge may not join a vertex to itself; use the loop set instead")]
    EdgeIsLoop(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;
