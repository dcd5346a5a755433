//! Compiled-in test problems, the published error tables, and the harness
//! that reproduces and renders them.

mod golden;
mod problems;
pub mod render;
mod table;

pub use golden::{GoldenTable, PaperNumber, PaperNumberError};
pub use problems::Problem;
pub use render::OutputFormat;
pub use table::{
    run_bench, run_table, BenchError, BenchReport, CellReport, RowReport, TableReport,
    TABLE_ITERATIONS,
};
