use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("omega must lie in (0, 1], got {0}")]
    OmegaOutOfRange(String),

    #[error("level must lie in 1..={n}, got {level}")]
    LevelOutOfRange { level: usize, n: usize },

    #[error("omega {omega} gives level {derived} but level {given} was requested")]
    OmegaLevelConflict { omega: String, derived: usize, given: usize },

    #[error("the maxmin-omega operation needs a nonempty multiset")]
    EmptyMultiset,

    #[error("dimension mismatch for {what}: expected {expected}, found {found}")]
    DimensionMismatch { what: &'static str, expected: usize, found: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, found: usize },

    #[error("row index {row} out of range for {rows} rows")]
    RowOutOfRange { row: usize, rows: usize },

    #[error("classical principal-solution criteria only hold for level 1 or n (n = {n}), got level {level}")]
    NotClassicalLevel { level: usize, n: usize },

    #[error("vector is not a solution of the normalized system")]
    NotASolution,

    #[error("column {0} appears in both the decreased and the increased set")]
    OverlappingRelaxation(usize),

    #[error("column {column} out of range for {n} columns")]
    ColumnOutOfRange { column: usize, n: usize },

    #[error("the solution does not admit this relaxation")]
    InadmissibleRelaxation,

    #[error("breakpoint arrangement has {cells} cells, exceeding the budget of {budget}")]
    CellBudgetExceeded { cells: u128, budget: u128 },

    #[error("{source_name}:{line}:{column}: {kind}: {message}")]
    Parse { kind: ParseKind, source_name: String, line: usize, column: usize, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}

/// Which input check a parse diagnostic comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParseKind {
    RaggedRow,
    BadEntry,
    EmptyInput,
    OmegaRange,
    LevelRange,
    LevelConflict,
    LengthMismatch,
}

impl std::fmt::Display for ParseKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            ParseKind::RaggedRow => "ragged row",
            ParseKind::BadEntry => "bad entry",
            ParseKind::EmptyInput => "empty input",
            ParseKind::OmegaRange => "omega out of range",
            ParseKind::LevelRange => "level out of range",
            ParseKind::LevelConflict => "omega and level disagree",
            ParseKind::LengthMismatch => "length mismatch",
        })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
