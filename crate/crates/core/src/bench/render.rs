//! Markdown and CSV rendering. Data rows carry no timestamps or
//! locale-dependent formatting, so output is stable across runs.

use std::fmt::Write as _;

use super::table::{BenchReport, TableReport};
use crate::analysis::ConvergenceReport;
use crate::methods::{MethodKind, Trace, WeightReport};
use crate::numeric::Real;

/// Significant digits for real-valued CSV fields.
pub const CSV_DIGITS: usize = 30;

pub const CSV_HEADER: [&str; 7] = [
    "problem_id",
    "method",
    "iteration",
    "x_n",
    "abs_error",
    "residual",
    "stop_reason",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
}

fn sci(v: &Real) -> String {
    v.to_sci_string(CSV_DIGITS)
}

fn short(v: &Real) -> String {
    v.to_sci_string(12)
}

fn opt_sci(v: Option<&Real>) -> String {
    v.map(sci).unwrap_or_default()
}

fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

/// One data row per iterate, `x0` included as iteration 0.
pub fn trace_csv(
    problem_id: &str,
    method: &MethodKind,
    trace: &Trace,
    alpha: Option<&Real>,
) -> String {
    let mut w = csv_writer();
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (k, (x, f)) in trace.iterates.iter().zip(&trace.residuals).enumerate() {
        let err = alpha.map(|a| (x - a).abs());
        w.write_record([
            problem_id.to_string(),
            method.to_string(),
            k.to_string(),
            sci(x),
            opt_sci(err.as_ref()),
            sci(&f.abs()),
            trace.stop.to_string(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

pub fn trace_markdown(
    problem_id: &str,
    method: &MethodKind,
    trace: &Trace,
    alpha: Option<&Real>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} on {problem_id} at {} digits\n",
        method,
        trace.precision().digits()
    );
    let _ = writeln!(out, "| n | x_n | abs_error | residual |");
    let _ = writeln!(out, "|---|---|---|---|");
    for (k, (x, f)) in trace.iterates.iter().zip(&trace.residuals).enumerate() {
        let err = alpha
            .map(|a| (x - a).abs().to_sci_string(5))
            .unwrap_or_else(|| "-".into());
        let _ = writeln!(
            out,
            "| {k} | {} | {err} | {} |",
            sci(x),
            f.abs().to_sci_string(5)
        );
    }
    let _ = writeln!(
        out,
        "\nstop: {} after {} step(s), {} evaluations",
        trace.stop,
        trace.steps(),
        trace.evals_used
    );
    if let Some(failure) = &trace.failure {
        let _ = writeln!(out, "failure: {failure}");
    }
    out
}

/// Data rows for every table cell in the fixed schema.
pub fn bench_csv(report: &BenchReport) -> String {
    let mut w = csv_writer();
    w.write_record(CSV_HEADER).expect("in-memory write");
    for table in &report.tables {
        for row in &table.rows {
            for cell in &row.cells {
                w.write_record([
                    table.problem.id.to_string(),
                    row.method.to_string(),
                    cell.iteration.to_string(),
                    opt_sci(cell.x_n.as_ref()),
                    opt_sci(cell.abs_error.as_ref()),
                    opt_sci(cell.residual.as_ref().map(Real::abs).as_ref()),
                    row.stop.to_string(),
                ])
                .expect("in-memory write");
            }
        }
    }
    finish(w)
}

/// Matched and mismatched counts plus one line per mismatched cell.
pub fn bench_summary(report: &BenchReport) -> String {
    let mut out = String::new();
    for t in &report.tables {
        let _ = writeln!(
            out,
            "table {}: {}/{} cells match",
            t.table_id,
            t.matched(),
            t.cell_count()
        );
        for (method, cell) in t.mismatches() {
            let computed = cell
                .computed
                .map(|c| c.to_string())
                .unwrap_or_else(|| "missing".into());
            let _ = writeln!(
                out,
                "  mismatch: table {} {} iteration {}: computed {computed}, published {}",
                t.table_id,
                method.name(),
                cell.iteration,
                cell.golden
            );
        }
    }
    let _ = writeln!(
        out,
        "total: {} matched, {} mismatched of {}",
        report.matched(),
        report.mismatched(),
        report.cell_count()
    );
    out
}

fn table_markdown(out: &mut String, t: &TableReport) {
    let _ = writeln!(
        out,
        "## Table {}: {} = {}, x0 = {}\n",
        t.table_id, t.problem.id, t.problem.expr_text, t.problem.x0_text
    );
    let _ = writeln!(out, "{}\n", t.problem.description);
    let _ = writeln!(
        out,
        "| method | \\|x1 - a\\| | \\|x2 - a\\| | \\|x3 - a\\| |"
    );
    let _ = writeln!(out, "|---|---|---|---|");
    for row in &t.rows {
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| match c.computed {
                Some(v) if c.matches() => v.to_string(),
                Some(v) => format!("{v} (published {}) MISMATCH", c.golden),
                None => format!("missing (published {}) MISMATCH", c.golden),
            })
            .collect();
        let note = if row.rerun {
            format!(" [re-run at {} digits]", row.precision.digits())
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "| {}{note} | {} |",
            row.method.label(),
            cells.join(" | ")
        );
    }
    let _ = writeln!(
        out,
        "\n{} digits, {}/{} cells match\n",
        t.precision.digits(),
        t.matched(),
        t.cell_count()
    );
}

pub fn bench_markdown(report: &BenchReport) -> String {
    let mut out = String::new();
    for t in &report.tables {
        table_markdown(&mut out, t);
    }
    out.push_str(&bench_summary(report));
    out
}

pub fn analysis_markdown(problem: &str, r: &ConvergenceReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# {} on {problem} at {} digits\n",
        r.method,
        r.precision.digits()
    );
    let _ = writeln!(out, "root: {}", r.alpha.to_sci_string(CSV_DIGITS));
    let _ = writeln!(out, "stop: {}", r.stop);
    let _ = writeln!(out, "theoretical order: {}", r.method.theoretical_order());
    let coc: Vec<String> = r
        .coc_sequence
        .iter()
        .map(|v| format!("{:.6}", v.to_f64()))
        .collect();
    let _ = writeln!(out, "coc sequence: {}", coc.join(", "));
    let _ = writeln!(out, "final coc: {:.6}", r.final_coc.to_f64());
    let _ = writeln!(out, "efficiency index: {:.4}", r.efficiency_index.to_f64());
    let _ = writeln!(
        out,
        "empirical constant: {}",
        r.empirical_constant.to_sci_string(6)
    );
    let _ = writeln!(
        out,
        "empirical constant (signed): {}",
        r.signed_constant().to_sci_string(6)
    );
    match &r.predicted_constant {
        Some(p) => {
            let _ = writeln!(out, "predicted constant: {}", p.to_sci_string(6));
            if let Some(gap) = r.relative_gap() {
                let _ = writeln!(out, "relative gap: {}", gap.to_sci_string(3));
            }
        }
        None => {
            let _ = writeln!(out, "predicted constant: n/a");
        }
    }
    let _ = writeln!(out, "verdict: {}", r.verdict);
    out
}

/// `field,value` rows.
pub fn analysis_csv(problem: &str, r: &ConvergenceReport) -> String {
    let mut w = csv_writer();
    let mut row = |k: &str, v: String| w.write_record([k, v.as_str()]).expect("in-memory write");
    row("field", "value".into());
    row("problem_id", problem.into());
    row("method", r.method.to_string());
    row("precision", r.precision.digits().to_string());
    row("alpha", sci(&r.alpha));
    row("stop_reason", r.stop.to_string());
    for (i, c) in r.coc_sequence.iter().enumerate() {
        row(&format!("coc_{}", i + 2), sci(c));
    }
    row("final_coc", sci(&r.final_coc));
    row("efficiency_index", sci(&r.efficiency_index));
    row("empirical_constant", sci(&r.empirical_constant));
    row("empirical_constant_signed", sci(r.signed_constant()));
    row("predicted_constant", opt_sci(r.predicted_constant.as_ref()));
    row("verdict", r.verdict.to_string());
    finish(w)
}

pub fn weight_markdown(spec: &str, r: &WeightReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "weight: {spec}\n");
    let _ = writeln!(out, "| condition | target | value | result |");
    let _ = writeln!(out, "|---|---|---|---|");
    for c in &r.conditions {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            c.name,
            short(&c.target),
            short(&c.value),
            if c.pass { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(out, "\nG'''(1) = {}", short(&r.g3));
    let _ = writeln!(out, "verdict: {}", if r.all_pass { "pass" } else { "fail" });
    out
}

pub fn weight_csv(spec: &str, r: &WeightReport) -> String {
    let mut w = csv_writer();
    w.write_record(["weight", "condition", "target", "value", "pass"])
        .expect("in-memory write");
    for c in &r.conditions {
        w.write_record([
            spec,
            c.name,
            &sci(&c.target),
            &sci(&c.value),
            &c.pass.to_string(),
        ])
        .expect("in-memory write");
    }
    w.write_record([spec, "G'''(1)", "", &sci(&r.g3), ""])
        .expect("in-memory write");
    finish(w)
}
