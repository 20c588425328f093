//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by graph parsing, validation, and the decision pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("self-loop at vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),
    #[error("graph is not bipartite; odd cycle: {0:?}")]
    OddCycle(Vec<String>),
    #[error("graph is not connected")]
    Disconnected,
    #[error("graph is acyclic; the skeleton is only defined for graphs with a cycle")]
    AcyclicGraph,
    #[error("vertex {0:?} is not in the skeleton")]
    NotInSkeleton(String),
    #[error("every skeleton vertex is leaf-type; the skeleton has no limbs")]
    AllLeafType,
    #[error("input is not a tree")]
    NotATree,
    #[error("input is not unicyclic")]
    NotUnicyclic,
    #[error("input is not a cactus graph")]
    NotCactus,
    #[error("matrix is not an alternating sign matrix: {0}")]
    NotAnAsm(String),
    #[error("vertex orders do not enumerate the bipartition parts: {0}")]
    OrderMismatch(String),
    #[error("degree demand out of range at vertex {0:?}")]
    DemandOutOfRange(String),
    #[error("part too large for subset scan: {0} vertices (limit {1})")]
    PartTooLarge(usize, usize),
    #[error("oracle budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("colouring is not a difference-1 colouring")]
    NotDifference1,
    #[error("colouring does not cover edge set: {0}")]
    ColouringDomain(String),
    #[error("cycle is not alternating under the given colouring")]
    CycleNotAlternating,
    #[error("unsupported count size n={0}; supported range is 1..=5")]
    UnsupportedCountSize(u32),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
