//! Circuit-description documents and the table runner behind the `pairsim`
//! command.

pub mod document;
pub mod runner;

pub use document::{parse, CircuitDocument, ElementStmt, Expr, InputStmt, ParseError, ParseErrorKind, Sweep};
pub use runner::{run, OutputFormat, ResultRow, ResultTable, RunError};

/// Process exit codes.
pub mod exit {
    pub const IO: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const EVALUATION: u8 = 3;
    pub const SCENARIO_FAILED: u8 = 4;
}
