use thiserror::Error;

use crate::tuple::{KTuple, SpaceTag};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tuples must have at least one coordinate")]
    EmptyTuple,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{tuple} is not in {space}: {reason}")]
    Membership {
        tuple: KTuple,
        space: SpaceTag,
        reason: String,
    },
    #[error("mixed sum needs a shorter left argument, got dimensions {short} and {long}")]
    MixedDimensions { short: usize, long: usize },
    #[error("coordinate overflow")]
    Overflow,
    #[error("generator values must be distinct, {0} repeats")]
    RepeatedGenerator(KTuple),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("shift count {shift} out of range for dimension {dim}")]
    ShiftOutOfRange { shift: usize, dim: usize },
    #[error("box has no cells: {0}")]
    EmptyBox(String),
    #[error("{0} is not a cell of the box")]
    NotACell(KTuple),
    #[error("invalid structure spec: {0}")]
    InvalidSpec(String),
    #[error("{count} candidate structures exceed the cap of {cap}")]
    CandidateExplosion { count: usize, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("coloring has {colors} color entries for {cells} cells")]
    ColoringSize { cells: usize, colors: usize },
    #[error("color {color} is out of range for r={r}")]
    ColorOutOfRange { color: u32, r: u32 },
    #[error("model decode: {0}")]
    Decode(String),
    #[error(transparent)]
    Solver(#[from] crate::sat::SolverError),
    #[error("engine discrepancy on {instance}: {detail}")]
    Discrepancy { instance: String, detail: String },
    #[error("certificate for {instance} failed validation: {detail}")]
    Validation { instance: String, detail: String },
    #[error("invalid campaign: {0}")]
    InvalidCampaign(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
