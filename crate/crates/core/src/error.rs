use thiserror::Error;

/// Errors surfaced by the library.
///
/// Resource-limit variants ([`Error::OracleLimit`], [`Error::CellLimit`])
/// are distinguished so that callers can map them to a dedicated exit code.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("selection of positions is empty")]
    EmptySelection,

    #[error("position {position} is out of bounds for a permutation of length {len}")]
    PositionOutOfBounds { position: usize, len: usize },

    #[error("word is not a permutation of 1..={len}")]
    NotAPermutation { len: usize },

    #[error("pattern length {pattern} exceeds host length {host}")]
    PatternTooLong { pattern: usize, host: usize },

    #[error("overlap h must be at least 1")]
    OverlapTooSmall,

    #[error("permutation length {n} exceeds the brute-force limit {limit}")]
    OracleLimit { n: usize, limit: usize },

    #[error("shape has {cells} cells, above the generation limit of {limit}")]
    CellLimit { cells: usize, limit: usize },

    #[error("parts must be weakly decreasing and positive")]
    NotAPartition,

    #[error("inner shape does not fit inside the outer shape")]
    InnerNotContained,

    #[error("skew shape has no cells")]
    EmptyShape,

    #[error("row {index}: part {part} is below the minimum {min} required by overlap {h}")]
    PartTooSmall {
        index: usize,
        part: usize,
        min: usize,
        h: usize,
    },

    #[error("composition must have at least one part")]
    EmptyComposition,

    #[error("rows {row} and {next} share {found} columns, expected {expected}")]
    OverlapMismatch {
        row: usize,
        next: usize,
        expected: usize,
        found: usize,
    },

    #[error("filling is not a valid decreasing skew tableau")]
    InvalidTableau,

    #[error("permutation does not satisfy DES_{h} for its own descent count")]
    NotDesH { h: usize },

    #[error("descending run {index} has length {len}, shorter than the overlap {h}")]
    RunTooShort { index: usize, len: usize, h: usize },

    #[error("closed formula is only available for k in 1..=3, got {k}")]
    ClosedFormulaRange { k: usize },

    #[error("closed formula requires d >= k, got d={d}, k={k}")]
    ClosedFormulaDomain { d: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
