use thiserror::Error;

/// Errors raised while building or querying a [`crate::FinitePoset`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("point index {index} out of range for a poset of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("relation {0} < {0} is not strict")]
    Reflexive(String),
    #[error("relations contain a cycle through `{0}`")]
    Cycle(String),
    #[error("edge {lower} -> {upper} is implied by transitivity and is not a covering relation")]
    RedundantEdge { lower: String, upper: String },
    #[error("unknown point id `{0}`")]
    UnknownPoint(String),
    #[error("malformed point id `{0}`")]
    MalformedId(String),
    #[error("more than one basepoint label in a poset")]
    MultipleStars,
    #[error("map has {got} images but the source has {expected} points")]
    MapLength { expected: usize, got: usize },
    #[error("map image {image} out of range for a target of {len} points")]
    ImageOutOfRange { image: usize, len: usize },
}

/// Errors raised by group construction and generating-set validation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("group order must be positive")]
    Empty,
    #[error("group order {0} exceeds the supported maximum of {max}", max = crate::group::MAX_GROUP_ORDER)]
    TooLarge(usize),
    #[error("cayley table is not {0}x{0}")]
    NotSquare(usize),
    #[error("cayley table entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("cayley table is not a latin square")]
    NotLatin,
    #[error("element {0} does not act as the identity")]
    BadIdentity(usize),
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("generator list contains the identity at position {position}")]
    ContainsIdentity { position: usize },
    #[error("generator `{0}` is listed more than once")]
    DuplicateGenerator(String),
    #[error("generators only generate a proper subgroup of order {}", subgroup.len())]
    DoesNotGenerate { subgroup: Vec<usize> },
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("parameter {param} is out of range for family `{family}`")]
    BadParameter { family: String, param: String },
    #[error("group of order {order} exceeds the isomorphism-test bound {limit}")]
    SizeLimitExceeded { order: usize, limit: usize },
}

/// Errors from the construction of realizing spaces.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("gadget mode is `none`: there are no gadgets to attach")]
    NoGadgets,
    #[error("gadget parameter n must be positive")]
    ZeroGadgetParameter,
    #[error("space already contains a basepoint")]
    StarPresent,
    #[error("space is missing the level -1 point of element {0}")]
    MissingBottom(usize),
    #[error("space does not match the construction: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// Errors from exhaustive searches that are bounded by an explicit budget.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
    #[error("space has {points} points; enumeration is limited to {limit}")]
    SizeLimitExceeded { points: usize, limit: usize },
    #[error("maps do not share a common source and target: {0}")]
    Inconsistent(String),
}

/// Errors from order-complex and homology computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("dimension cap must be at least 1")]
    BadCap,
    #[error("order complex exceeds {limit} simplices")]
    TooManySimplices { limit: usize },
    #[error("boundary map in degree {0} is not available")]
    MissingBoundary(usize),
    #[error("map is not an automorphism of the space")]
    NotAnAutomorphism,
    #[error("cycle basis is inconsistent with the chain complex: {0}")]
    BasisInconsistent(String),
    #[error("simplex list is not a simplicial complex: {0}")]
    NotClosed(String),
}

/// Errors while reading or writing the persisted documents.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON document")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid document: {0}")]
    Invalid(String),
}

/// Umbrella error for callers that mix several subsystems.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Format(#[from] FormatError),
}
