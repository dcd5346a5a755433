use std::fmt::Display;

use thiserror::Error;

use crate::args::{
    AnalyzeArgs, BenchArgs, Cli, Command, MethodArgs, ProblemArgs, SolveArgs, WeightArgs,
};
use orderfour::analysis::{analyze, reference_root, AnalysisError};
use orderfour::bench::{render, run_bench, OutputFormat, Problem};
use orderfour::expr::Expr;
use orderfour::methods::{
    run, validate_weight, IterationSettings, MethodKind, MethodParseError, RunError, SettingsError,
    StopReason, WeightFn,
};
use orderfour::numeric::{Precision, Real};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
/// Max iterations, table mismatches, failed weight conditions, too few
/// usable iterates.
pub const EXIT_UNMET: u8 = 2;
pub const EXIT_METHOD_FAILURE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("--{flag}: {message}")]
    Usage { flag: String, message: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        EXIT_USAGE
    }
}

fn usage(flag: &str, message: impl Display) -> CliError {
    CliError::Usage {
        flag: flag.to_string(),
        message: message.to_string(),
    }
}

#[derive(Debug, Default)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let prec = Precision::new(cli.precision).map_err(|e| usage("precision", e))?;
    let format = OutputFormat::from(cli.format);
    match &cli.command {
        Command::Solve(args) => solve(args, prec, format, &settings(cli, prec)?),
        Command::Bench(args) => bench(args, prec, format),
        Command::Analyze(args) => analyze_cmd(args, prec, format),
        Command::ValidateWeight(args) => validate(args, prec, format, cli.tol.as_deref()),
    }
}

fn settings(cli: &Cli, prec: Precision) -> Result<IterationSettings, CliError> {
    let defaults = IterationSettings::for_precision(prec);
    let tol = match &cli.tol {
        Some(text) => Real::parse_decimal(text, prec).map_err(|e| usage("tol", e))?,
        None => defaults.tol_step,
    };
    IterationSettings::new(tol.clone(), tol, cli.max_iter).map_err(|e| match e {
        SettingsError::NonPositiveTolerance => usage("tol", e),
        SettingsError::ZeroIterations => usage("max-iter", e),
    })
}

struct Target {
    id: String,
    expr: Expr,
    x0: Real,
    bracket: Option<(Real, Real)>,
}

fn parse_real(flag: &str, text: &str, prec: Precision) -> Result<Real, CliError> {
    Real::parse_decimal(text.trim(), prec).map_err(|e| usage(flag, e))
}

fn parse_bracket(text: &str, prec: Precision) -> Result<(Real, Real), CliError> {
    let (lo, hi) = text
        .split_once(',')
        .ok_or_else(|| usage("bracket", format!("`{text}` must be `lo,hi`")))?;
    Ok((
        parse_real("bracket", lo, prec)?,
        parse_real("bracket", hi, prec)?,
    ))
}

fn resolve(args: &ProblemArgs, prec: Precision) -> Result<Target, CliError> {
    let bracket = args
        .bracket
        .as_deref()
        .map(|b| parse_bracket(b, prec))
        .transpose()?;
    let x0 = args
        .x0
        .as_deref()
        .map(|x| parse_real("x0", x, prec))
        .transpose()?;
    if let Some(id) = &args.problem {
        let problem = Problem::by_id(id).ok_or_else(|| {
            usage(
                "problem",
                format!("unknown problem `{id}`; expected f1, f2 or f3"),
            )
        })?;
        return Ok(Target {
            id: problem.id.to_string(),
            expr: problem.expr(),
            x0: x0.unwrap_or_else(|| problem.x0(prec)),
            bracket: Some(bracket.unwrap_or_else(|| problem.bracket(prec))),
        });
    }
    let text = args
        .expr
        .as_deref()
        .ok_or_else(|| usage("expr", "either --problem or --expr is required"))?;
    let expr = Expr::parse(text).map_err(|e| usage("expr", e))?;
    let x0 = x0.ok_or_else(|| usage("x0", "required with --expr"))?;
    Ok(Target {
        id: "custom".into(),
        expr,
        x0,
        bracket,
    })
}

fn method(args: &MethodArgs) -> Result<MethodKind, CliError> {
    MethodKind::from_parts(&args.method, args.weight.as_deref(), args.a.as_deref()).map_err(|e| {
        let flag = match &e {
            MethodParseError::UnknownMethod(_) => "method".to_string(),
            MethodParseError::BadStepFraction(_) => "a".to_string(),
            MethodParseError::Weight(_) => "weight".to_string(),
            MethodParseError::NotWeighted(opt) => opt.clone(),
        };
        usage(&flag, e)
    })
}

fn run_error(e: RunError) -> CliError {
    match e {
        RunError::StartOutsideDomain(_) => usage("x0", e),
        RunError::InvalidWeight => usage("weight", e),
    }
}

fn solve(
    args: &SolveArgs,
    prec: Precision,
    format: OutputFormat,
    settings: &IterationSettings,
) -> Result<Outcome, CliError> {
    let target = resolve(&args.problem, prec)?;
    let kind = method(&args.method)?;
    let alpha = match &target.bracket {
        Some(b) => Some(
            reference_root(&target.expr, b.clone())
                .map_err(|e| usage("bracket", e))?
                .alpha
                .with_precision(prec),
        ),
        None => None,
    };
    let trace = run(&target.expr, &kind, &target.x0, settings).map_err(run_error)?;
    let stdout = match format {
        OutputFormat::Markdown => render::trace_markdown(&target.id, &kind, &trace, alpha.as_ref()),
        OutputFormat::Csv => render::trace_csv(&target.id, &kind, &trace, alpha.as_ref()),
    };
    let code = match trace.stop {
        s if s.converged() => EXIT_OK,
        StopReason::MaxIterations => EXIT_UNMET,
        _ => EXIT_METHOD_FAILURE,
    };
    let stderr = match (&trace.failure, format) {
        (Some(f), OutputFormat::Csv) => format!("{}: {f}\n", trace.stop),
        _ => String::new(),
    };
    Ok(Outcome {
        stdout,
        stderr,
        code,
    })
}

fn bench(args: &BenchArgs, prec: Precision, format: OutputFormat) -> Result<Outcome, CliError> {
    let ids: Vec<u8> = match args.table.trim() {
        "all" => vec![1, 2, 3],
        t => match t.parse::<u8>() {
            Ok(n @ 1..=3) => vec![n],
            _ => return Err(usage("table", format!("`{t}` is not 1, 2, 3 or all"))),
        },
    };
    let report = run_bench(&ids, prec).map_err(|e| CliError::Failed(e.to_string()))?;
    let code = if report.all_match() {
        EXIT_OK
    } else {
        EXIT_UNMET
    };
    Ok(match format {
        OutputFormat::Markdown => Outcome {
            stdout: render::bench_markdown(&report),
            stderr: String::new(),
            code,
        },
        OutputFormat::Csv => Outcome {
            stdout: render::bench_csv(&report),
            stderr: render::bench_summary(&report),
            code,
        },
    })
}

fn analyze_cmd(
    args: &AnalyzeArgs,
    prec: Precision,
    format: OutputFormat,
) -> Result<Outcome, CliError> {
    let target = resolve(&args.problem, prec)?;
    let kind = method(&args.method)?;
    let bracket = target
        .bracket
        .as_ref()
        .ok_or_else(|| usage("bracket", "required with --expr"))?;
    let report = match analyze(&target.expr, &kind, &target.x0, (&bracket.0, &bracket.1)) {
        Ok(r) => r,
        Err(e @ AnalysisError::InsufficientIterates { .. }) => {
            return Ok(Outcome {
                stdout: String::new(),
                stderr: format!(
                    "{e}; the run stopped or reached rounding level too early even at doubled precision\n"
                ),
                code: EXIT_UNMET,
            })
        }
        Err(e @ AnalysisError::NoSignChange) => return Err(usage("bracket", e)),
        Err(AnalysisError::Run(e)) => return Err(run_error(e)),
        Err(e) => return Err(CliError::Failed(e.to_string())),
    };
    let stdout = match format {
        OutputFormat::Markdown => render::analysis_markdown(&target.id, &report),
        OutputFormat::Csv => render::analysis_csv(&target.id, &report),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: EXIT_OK,
    })
}

fn validate(
    args: &WeightArgs,
    prec: Precision,
    format: OutputFormat,
    tol: Option<&str>,
) -> Result<Outcome, CliError> {
    let weight: WeightFn = args.spec.parse().map_err(|e| usage("weight", e))?;
    let tol = match tol {
        Some(t) => parse_real("tol", t, prec)?,
        None => IterationSettings::for_precision(prec).tol_step,
    };
    let report = validate_weight(&weight, &tol).map_err(|e| usage("weight", e))?;
    let spec = weight.to_string();
    let stdout = match format {
        OutputFormat::Markdown => render::weight_markdown(&spec, &report),
        OutputFormat::Csv => render::weight_csv(&spec, &report),
    };
    Ok(Outcome {
        stdout,
        stderr: String::new(),
        code: if report.all_pass { EXIT_OK } else { EXIT_UNMET },
    })
}
