use thiserror::Error;

/// Which side of a bipartite relation an index refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelationSide {
    U,
    V,
}

impl std::fmt::Display for RelationSide {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RelationSide::U => f.write_str("U"),
            RelationSide::V => f.write_str("V"),
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set needs at least 2 elements, got {0}")]
    EmptyGroundSet(usize),
    #[error("element label {0:?} occurs more than once")]
    DuplicateElement(String),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("split part must be a proper non-empty subset (split {0})")]
    ImproperSplit(usize),
    #[error("split {index} duplicates split {previous}")]
    DuplicateSplit { index: usize, previous: usize },
    #[error("split system must contain at least one split")]
    NoSplits,
    #[error("splits or subsets are over different ground sets")]
    GroundSetMismatch,
    #[error("splits {0} and {1} are incompatible")]
    IncompatiblePair(usize, usize),
    #[error("split {0} was given twice where distinct splits are required")]
    IdenticalSplits(usize),
    #[error("split {split} belongs to component {component}")]
    SplitInComponent { split: usize, component: usize },
    #[error("relation has isolated vertex {index} on side {side}")]
    IsolatedVertex { side: RelationSide, index: usize },
    #[error("relation index out of range: {index} on side {side}")]
    RelationIndex { side: RelationSide, index: usize },
    #[error("(M1) fails for u1={u1}, u2={u2} sharing v={v}")]
    M1Violation { u1: usize, u2: usize, v: usize },
    #[error("(M2) fails for v1={v1}, v2={v2} sharing u={u}")]
    M2Violation { v1: usize, v2: usize, u: usize },
    #[error("{what}: {actual} exceeds the configured cap {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("vertex maps belong to different split systems")]
    SystemMismatch,
    #[error("side selection is not a vertex of the Buneman graph")]
    NotAVertex,
    #[error("vertex index {0} is out of range")]
    UnknownVertex(usize),
    #[error("restriction target must contain at least one split")]
    EmptySubset,
    #[error("split index {0} is out of range")]
    UnknownSplit(usize),
    #[error("no incompatibility component with id {0}")]
    UnknownComponent(usize),
    #[error("components must be distinct, both are {0}")]
    SameComponent(usize),
    #[error("vertices must be distinct, both are {0}")]
    IdenticalVertices(usize),
    #[error("tree reduction left no nodes")]
    DegenerateTree,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Returns `InternalInconsistency` with the formatted message unless `cond` holds.
macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::Error::InternalInconsistency(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
