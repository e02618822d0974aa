//! Shared error type for the verification engine.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("tensor is not commutative: {0}")]
    NotCommutative(String),
    #[error("tensor is not associative: {0}")]
    NotAssociative(String),
    #[error("unit law fails: {0}")]
    UnitLawFails(String),
    #[error("tensor does not distribute over joins: {0}")]
    DistributivityFails(String),
    #[error("trivial quantale: unit equals bottom")]
    TrivialQuantale,
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("operands belong to different quantales")]
    QuantaleMismatch,
    #[error("operands belong to different theories")]
    TheoryMismatch,
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("theory axiom violated at {0}")]
    AxiomViolation(String),
    #[error("carriers do not match: {0}")]
    DomainMismatch(String),
    #[error("search space too large: {0}")]
    SearchSpaceTooLarge(String),
    #[error("theory not supported: {0}")]
    TheoryNotSupported(String),
    #[error("not a distributor: {0}")]
    NotADistributor(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("structure is not dualisable: {0}")]
    NotDualisable(String),
    #[error("structure is not representable: {0}")]
    NotRepresentable(String),
    #[error("composite leaves the admissible class: {0}")]
    NotCompatible(String),
    #[error("not a pseudo-homomorphism: {0}")]
    NotPseudoHom(String),
    #[error("no splitting found within the search bound")]
    SplitNotFound,
    #[error("lattice is not distributive: {0}")]
    NotDistributive(String),
    #[error("lattice is not boolean: {0}")]
    NotBoolean(String),
}

pub type Result<T> = std::result::Result<T, Error>;
