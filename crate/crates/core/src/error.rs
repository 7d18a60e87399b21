use thiserror::Error;

/// Errors raised by the library.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    SizeCapExceeded { order: usize, cap: usize },
    #[error("invalid group specification: {0}")]
    InvalidSpec(String),
    #[error("element index {index} out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("subgroup enumeration needs order <= {cap}, group has order {order}")]
    EnumerationCapExceeded { order: usize, cap: usize },
    #[error("{0:?} is not a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("subgroup family is empty")]
    EmptyFamily,
    #[error("subgroup family is not invariant under conjugation")]
    NotInvariant,
    #[error("cannot integerize the zero vector")]
    ZeroVector,
    #[error("group is not abelian")]
    NotAbelian,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("function belongs to a different groupoid")]
    MismatchedGroupoid,
    #[error("unit {0} not found")]
    UnitNotFound(usize),
    #[error("subgroup {0:?} is not a member of the family")]
    SubgroupNotInFamily(Vec<usize>),
    #[error("element fails the coset constraint on {0:?}")]
    NotAWitness(Vec<usize>),
    #[error("matrix has non-finite entries")]
    NonFiniteEntries,
    #[error("unit set is empty")]
    EmptyUnitSet,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("groupoid axiom violated: {0}")]
    GroupoidAxiom(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
