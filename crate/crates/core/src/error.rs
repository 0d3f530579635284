use thiserror::Error;

/// Errors raised by constructors and decision procedures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a digital image must have at least one vertex")]
    ZeroVertices,
    #[error("edge ({a}, {b}) has an endpoint outside 0..{n}")]
    EdgeOutOfRange { a: usize, b: usize, n: usize },
    #[error("vertex {v} is outside 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("{what}: size {size} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("product level {level} is invalid for {factors} factor(s)")]
    BadLevel { level: usize, factors: usize },
    #[error("category must be 1 or 2, got {0}")]
    BadCategory(usize),
    #[error("domain/codomain mismatch: {0}")]
    DomainMismatch(&'static str),
    #[error("table has {got} entries, expected {expected}")]
    BadTable { got: usize, expected: usize },
    #[error("map is not continuous: {a} ~ {b} but their images are not adjacent")]
    Discontinuous { a: usize, b: usize },
    #[error("map does not send basepoint {base} to {target}")]
    NotPointed { base: usize, target: usize },
    #[error(
        "multiplication is not continuous: ({}, {}) ~ ({}, {}) but the products are not adjacent",
        .a.0, .a.1, .b.0, .b.1
    )]
    DiscontinuousMultiplication {
        a: (usize, usize),
        b: (usize, usize),
    },
    #[error("image is not irreducible")]
    NotIrreducible,
    #[error("image is not connected")]
    NotConnected,
    #[error("multiplication by {x} is not a bijection")]
    MultiplicationNotInvertible { x: usize },
    #[error("left multiplication by the basepoint is not an isomorphism")]
    MuENotInvertible,
    #[error("maps are not a homotopy equivalence")]
    NotHomotopyEquivalence,
    #[error("structure is not in category 2")]
    NotCategory2,
    #[error("structure violation: {0}")]
    StructureViolation(String),
    #[error("search budget of {budget} maps exhausted while {what}")]
    BudgetExhausted { what: &'static str, budget: usize },
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("operation is not associative at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("operation has no two-sided identity")]
    NoIdentity,
    #[error("element {a} has no inverse")]
    NoInverse { a: usize },
    #[error("subset element {s} is not a group element")]
    BadSubset { s: usize },
    #[error("image has {image} vertices but the group has order {group}")]
    SizeMismatch { image: usize, group: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
