use alloc::boxed::Box;
use alloc::string::String;

/// Two base pairs in the same relation `k` with different counts of
/// `z` such that `R(x,z) = i` and `R(z,y) = j`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error(
    "intersection number p[{i}][{j}]^{k} is {expected} at base pair ({bx},{by}) \
     but {found} at ({x},{y}) (first differing z = {z})"
)]
pub struct IntersectionWitness {
    pub i: String,
    pub j: String,
    pub k: String,
    pub bx: usize,
    pub by: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub expected: u64,
    pub found: u64,
}

/// The first association-scheme axiom found violated, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AxiomViolation {
    #[error("relation map is not surjective: relation `{relation}` never occurs")]
    NotSurjective { relation: String },
    #[error("no identity relation: R({x},{x}) = `{found}` differs from R(0,0) = `{identity}`")]
    DiagonalNotConstant {
        x: usize,
        found: String,
        identity: String,
    },
    #[error("identity relation `{identity}` occurs off the diagonal at ({x},{y})")]
    IdentityOffDiagonal { x: usize, y: usize, identity: String },
    #[error(
        "transpose not closed: R({x},{y}) = `{relation}` but R({y},{x}) = `{found}` \
         while an earlier pair gave transpose `{expected}`"
    )]
    TransposeNotClosed {
        x: usize,
        y: usize,
        relation: String,
        expected: String,
        found: String,
    },
    #[error("{0}")]
    IntersectionInconsistent(Box<IntersectionWitness>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("empty point set")]
    EmptyPointSet,
    #[error("relation map has {found} entries, expected {expected}")]
    MapShape { expected: usize, found: usize },
    #[error(transparent)]
    Axiom(#[from] AxiomViolation),
    #[error("scheme is not commutative")]
    NotCommutative,
    #[error("operands belong to different schemes")]
    SchemeMismatch,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("morphism square does not commute at ({x},{y}): g(R(x,y)) = `{left}` but R'(f(x),f(y)) = `{right}`")]
    MorphismNotCommuting {
        x: usize,
        y: usize,
        left: String,
        right: String,
    },
    #[error("inconsistent morphism input: {0}")]
    MorphismInconsistent(String),
    #[error("morphism is not surjective")]
    NotSurjective,
    #[error("partial maps are not composable: {0}")]
    SetMismatch(String),
    #[error("idempotent decomposition failed: {0}")]
    Decomposition(String),
    #[error("numerical tolerance breached: {0}")]
    Tolerance(String),
    #[error("linear program needs rational coefficients: {0}")]
    IrrationalCoefficients(String),
    #[error("net check precondition failed: {0}")]
    NetPrecondition(String),
}

pub type Result<T> = core::result::Result<T, Error>;
