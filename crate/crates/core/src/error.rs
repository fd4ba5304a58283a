use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown arrow `{name}`")]
    UnknownArrow { line: usize, name: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: duplicate arrow `{name}`")]
    DuplicateArrow { line: usize, name: String },
    #[error("line {line}: duplicate vertex `{name}`")]
    DuplicateVertex { line: usize, name: String },
    #[error("line {line}: relation is not composable: t({first}) != s({second})")]
    NonComposable {
        line: usize,
        first: String,
        second: String,
    },
    #[error("line {line}: only monomial relations are supported ({message})")]
    NonMonomial { line: usize, message: String },

    #[error("invalid walk literal `{literal}`: {message}")]
    WalkLiteral { literal: String, message: String },
    #[error("letters do not compose at position {position}")]
    NotComposable { position: usize },
    #[error("walk `{0}` is not a string")]
    NotAString(String),
    #[error("walk `{0}` is not a band")]
    NotABand(String),
    #[error("walk `{0}` is not a brick")]
    NotABrick(String),
    #[error("directedness is undefined for walks of length 0")]
    EmptyWalk,
    #[error("the algebra is not a string algebra: {0}")]
    NotStringAlgebra(String),
    #[error("the algebra is not gentle: {0}")]
    NotGentle(String),
    #[error("band pool covers lengths up to {have}, need {need}")]
    PoolTooSmall { have: usize, need: usize },
    #[error("band module parameter must be nonzero")]
    ZeroLambda,
    #[error("band module multiplicity must be positive")]
    ZeroMultiplicity,

    #[error("representations live on different vertex sets ({left} vs {right} vertices)")]
    DimensionMismatch { left: usize, right: usize },
    #[error("relation {relation} does not act as zero on the representation")]
    RelationNotZero { relation: String },
    #[error("certified rank search needs {needed} points, cap is {cap}")]
    CertificationTooLarge { needed: u128, cap: u128 },
    #[error("Hom dimensions disagree across band parameters: {0}")]
    LambdaDisagreement(String),

    #[error("sequence entry {index} is not a brick")]
    NonBrickEntry { index: usize },
    #[error(
        "sequence is not weakly forward hom-orthogonal: Hom(entry {left}, entry {right}) != 0"
    )]
    NotWeaklyFho { left: usize, right: usize },
    #[error("simple chain construction revisited S({vertex})")]
    RepeatedSimple { vertex: String },
    #[error("no nonzero continuation from S({vertex}) in band {band}")]
    NoNonzeroContinuation { vertex: String, band: String },
}

pub type Result<T> = std::result::Result<T, Error>;
