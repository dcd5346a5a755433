use rayon::prelude::*;
use thiserror::Error;

use super::golden::{GoldenTable, PaperNumber};
use super::problems::Problem;
use crate::analysis::{reference_root, usability_floor, AnalysisError};
use crate::expr::Expr;
use crate::methods::{run, IterationSettings, MethodKind, RunError, StopReason};
use crate::numeric::{Precision, Real};

/// Iterations printed per row.
pub const TABLE_ITERATIONS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BenchError {
    #[error("no table {0}; expected 1, 2 or 3")]
    UnknownTable(u8),
    #[error("reference root: {0}")]
    Root(#[from] AnalysisError),
    #[error(transparent)]
    Run(#[from] RunError),
}

#[derive(Debug, Clone)]
pub struct CellReport {
    /// 1-based iterate index.
    pub iteration: usize,
    pub golden: PaperNumber,
    /// `None` when the run stopped before reaching this iterate.
    pub computed: Option<PaperNumber>,
    pub x_n: Option<Real>,
    pub abs_error: Option<Real>,
    pub residual: Option<Real>,
}

impl CellReport {
    pub fn matches(&self) -> bool {
        self.computed == Some(self.golden)
    }
}

#[derive(Debug, Clone)]
pub struct RowReport {
    pub method: MethodKind,
    pub cells: Vec<CellReport>,
    pub stop: StopReason,
    /// Precision of the run the cells come from.
    pub precision: Precision,
    /// Set when a mismatch triggered a doubled-precision re-run.
    pub rerun: bool,
}

impl RowReport {
    pub fn mismatches(&self) -> usize {
        self.cells.iter().filter(|c| !c.matches()).count()
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub table_id: u8,
    pub problem: &'static Problem,
    /// Working precision after any underflow escalation.
    pub precision: Precision,
    pub alpha: Real,
    pub rows: Vec<RowReport>,
}

impl TableReport {
    pub fn cell_count(&self) -> usize {
        self.rows.iter().map(|r| r.cells.len()).sum()
    }

    pub fn mismatched(&self) -> usize {
        self.rows.iter().map(RowReport::mismatches).sum()
    }

    pub fn matched(&self) -> usize {
        self.cell_count() - self.mismatched()
    }

    /// `(method, cell)` for every cell still mismatched after re-running.
    pub fn mismatches(&self) -> impl Iterator<Item = (&MethodKind, &CellReport)> {
        self.rows.iter().flat_map(|r| {
            r.cells
                .iter()
                .filter(|c| !c.matches())
                .map(move |c| (&r.method, c))
        })
    }
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub tables: Vec<TableReport>,
}

impl BenchReport {
    pub fn cell_count(&self) -> usize {
        self.tables.iter().map(TableReport::cell_count).sum()
    }

    pub fn mismatched(&self) -> usize {
        self.tables.iter().map(TableReport::mismatched).sum()
    }

    pub fn matched(&self) -> usize {
        self.cell_count() - self.mismatched()
    }

    pub fn all_match(&self) -> bool {
        self.mismatched() == 0
    }
}

/// Reproduces the listed tables in order.
pub fn run_bench(table_ids: &[u8], prec: Precision) -> Result<BenchReport, BenchError> {
    let tables = table_ids
        .iter()
        .map(|id| run_table(*id, prec))
        .collect::<Result<_, _>>()?;
    Ok(BenchReport { tables })
}

/// Computes the first three iterate errors of every method for one table.
///
/// The whole table moves to doubled precision when a third-iterate error
/// falls under the usability floor. Rows with a mismatched cell are then
/// re-run once more at doubled precision and reported from that run.
pub fn run_table(table_id: u8, prec: Precision) -> Result<TableReport, BenchError> {
    let golden = GoldenTable::get(table_id).ok_or(BenchError::UnknownTable(table_id))?;
    let problem =
        Problem::by_id(golden.problem_id).expect("golden tables reference registry problems");
    let expr = problem.expr();

    let mut working = prec;
    let mut alpha = root(problem, &expr, working)?;
    let mut rows = compute_rows(
        problem,
        &expr,
        &golden,
        &alpha,
        working,
        &MethodKind::catalogue(),
    )?;
    let floor = usability_floor(working);
    let underflow = rows.iter().any(|r| {
        r.cells
            .get(TABLE_ITERATIONS - 1)
            .and_then(|c| c.abs_error.as_ref())
            .is_some_and(|e| *e <= floor)
    });
    if underflow {
        working = working.doubled();
        alpha = root(problem, &expr, working)?;
        rows = compute_rows(
            problem,
            &expr,
            &golden,
            &alpha,
            working,
            &MethodKind::catalogue(),
        )?;
    }

    let retry: Vec<MethodKind> = rows
        .iter()
        .filter(|r| r.mismatches() > 0)
        .map(|r| r.method.clone())
        .collect();
    if !retry.is_empty() {
        let higher = working.doubled();
        let alpha_hi = root(problem, &expr, higher)?;
        let redone = compute_rows(problem, &expr, &golden, &alpha_hi, higher, &retry)?;
        for mut row in redone {
            row.rerun = true;
            let slot = rows
                .iter_mut()
                .find(|r| r.method == row.method)
                .expect("re-run rows come from the table");
            *slot = row;
        }
    }

    Ok(TableReport {
        table_id,
        problem,
        precision: working,
        alpha,
        rows,
    })
}

fn root(problem: &Problem, expr: &Expr, prec: Precision) -> Result<Real, BenchError> {
    let reference = reference_root(expr, problem.bracket(prec))?;
    Ok(reference.alpha)
}

fn compute_rows(
    problem: &Problem,
    expr: &Expr,
    golden: &GoldenTable,
    alpha: &Real,
    prec: Precision,
    methods: &[MethodKind],
) -> Result<Vec<RowReport>, BenchError> {
    methods
        .par_iter()
        .map(|method| {
            let cells = golden
                .rows
                .iter()
                .find(|(name, _)| *name == method.name())
                .map(|(_, cells)| *cells)
                .expect("every catalogue method has a golden row");
            compute_row(problem, expr, method, &cells, alpha, prec)
        })
        .collect()
}

fn compute_row(
    problem: &Problem,
    expr: &Expr,
    method: &MethodKind,
    golden: &[PaperNumber; TABLE_ITERATIONS],
    alpha: &Real,
    prec: Precision,
) -> Result<RowReport, BenchError> {
    let settings = IterationSettings {
        max_iter: TABLE_ITERATIONS,
        ..IterationSettings::for_precision(prec)
    };
    let trace = run(expr, method, &problem.x0(prec), &settings)?;
    let cells = golden
        .iter()
        .enumerate()
        .map(|(i, gold)| {
            let k = i + 1;
            let x_n = trace.iterates.get(k).cloned();
            let abs_error = x_n.as_ref().map(|x| (x - alpha).abs());
            CellReport {
                iteration: k,
                golden: *gold,
                computed: abs_error.as_ref().map(PaperNumber::from_real),
                residual: trace.residuals.get(k).cloned(),
                x_n,
                abs_error,
            }
        })
        .collect();
    Ok(RowReport {
        method: method.clone(),
        cells,
        stop: trace.stop,
        precision: prec,
        rerun: false,
    })
}
