use thiserror::Error;

use crate::graph::Id;

/// Which identifier sort an error refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sort {
    Vertex,
    Edge,
}

impl std::fmt::Display for Sort {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sort::Vertex => write!(f, "vertex"),
            Sort::Edge => write!(f, "edge"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate {sort} identifier {id}")]
    DuplicateId { sort: Sort, id: Id },
    #[error("edge {edge} references unknown vertex {vertex}")]
    DanglingEndpoint { edge: Id, vertex: Id },
    #[error("map is not total: {sort} {id} of the domain has no image")]
    NotTotal { sort: Sort, id: Id },
    #[error("map sends {sort} {id} outside the codomain")]
    UnknownImage { sort: Sort, id: Id },
    #[error("edge {edge} is not mapped compatibly with its endpoints")]
    IncidenceViolation { edge: Id },
    #[error("graphs have different flavors")]
    FlavorMismatch,
    #[error("codomain of the first morphism is not the domain of the second")]
    DomainMismatch,
    #[error("condition is rooted at a different graph than expected")]
    RootMismatch,
    #[error("object satisfaction requires a condition rooted at the empty graph")]
    NonInitialObjectCondition,
    #[error("span has no monomorphic leg")]
    NoMonoLeg,
    #[error("morphism is required to be a monomorphism")]
    NotMono,
    #[error("match is not admissible: {0}")]
    InadmissibleMatch(String),
    #[error("probe set of {size} graphs exceeds the configured cap {cap}")]
    ProbeSetTooLarge { size: usize, cap: usize },
    #[error("steps cannot be composed: {0}")]
    NonComposableSteps(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Short machine-readable code, stable across releases.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DuplicateId { .. } => "DuplicateId",
            Error::DanglingEndpoint { .. } => "DanglingEndpoint",
            Error::NotTotal { .. } => "NotTotal",
            Error::UnknownImage { .. } => "UnknownImage",
            Error::IncidenceViolation { .. } => "IncidenceViolation",
            Error::FlavorMismatch => "FlavorMismatch",
            Error::DomainMismatch => "DomainMismatch",
            Error::RootMismatch => "RootMismatch",
            Error::NonInitialObjectCondition => "NonInitialObjectCondition",
            Error::NoMonoLeg => "NoMonoLeg",
            Error::NotMono => "NotMono",
            Error::InadmissibleMatch(_) => "InadmissibleMatch",
            Error::ProbeSetTooLarge { .. } => "ProbeSetTooLarge",
            Error::NonComposableSteps(_) => "NonComposableSteps",
            Error::ConfigInvalid(_) => "ConfigInvalid",
        }
    }
}
