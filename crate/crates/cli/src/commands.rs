use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::thread;

use subtyper::export::emit_dot;
use subtyper::{
    build_subclassing, emit, iterate, iterate_all, parse_decls, parse_subtype_query, query_subtype,
    ArgumentMode, ConstructionConfig, EmitFormat, Error, IterationReport, NamingConfig,
    SubclassingGraph, SubtypeAnswer,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PARSE: u8 = 1;
pub const EXIT_BUDGET: u8 = 2;
pub const EXIT_IO: u8 = 3;
pub const EXIT_FALSE: u8 = 4;
pub const EXIT_UNKNOWN: u8 = 5;

const BUDGET_VAR: &str = "SUBTYPER_VERTEX_BUDGET";

/// Failure carrying its diagnostic and exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_IO,
            message: format!("{}: {e}", path.display()),
        }
    }

    fn from_error(path: &Path, e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            _ => EXIT_PARSE,
        };
        Failure {
            code,
            message: format!("{}:{e}", path.display()),
        }
    }
}

fn report(result: Result<u8, Failure>) -> u8 {
    result.unwrap_or_else(|f| {
        eprintln!("error: {}", f.message);
        f.code
    })
}

fn config(iterations: usize, mode: ArgumentMode) -> Result<ConstructionConfig, Failure> {
    let mut cfg = ConstructionConfig::new(iterations, mode);
    if let Ok(raw) = std::env::var(BUDGET_VAR) {
        cfg.vertex_budget = raw
            .trim()
            .parse()
            .ok()
            .filter(|&b: &usize| b > 0)
            .ok_or_else(|| Failure {
                code: EXIT_PARSE,
                message: format!("{BUDGET_VAR} must be a positive integer, got {raw:?}"),
            })?;
    }
    Ok(cfg)
}

fn load(input: &Path, naming: &NamingConfig) -> Result<SubclassingGraph, Failure> {
    let source = fs::read_to_string(input).map_err(|e| Failure::io(input, e))?;
    let table = parse_decls(&source).map_err(|e| Failure::from_error(input, e))?;
    build_subclassing(&table, naming).map_err(|e| Failure::from_error(input, e))
}

pub fn build(
    input: &Path,
    iterations: usize,
    mode: ArgumentMode,
    format: EmitFormat,
    out: Option<&Path>,
    highlight: bool,
) -> u8 {
    report((|| {
        let cfg = config(iterations, mode)?;
        let classes = load(input, &cfg.naming)?;
        let (mut stages, stats) =
            iterate_all(&classes, &cfg).map_err(|e| Failure::from_error(input, e))?;
        let last = stages.pop().expect("at least one stage");
        let text = match (format, highlight) {
            (EmitFormat::Dot, true) => emit_dot(&last, stages.last().filter(|_| iterations > 1)),
            _ => emit(&last, &stats, format),
        };
        match out {
            Some(path) => fs::write(path, text).map_err(|e| Failure::io(path, e))?,
            None => print!("{text}"),
        }
        Ok(EXIT_OK)
    })())
}

fn render_rows(table: &mut String, reports: &[&IterationReport]) {
    for r in reports.iter().flat_map(|r| &r.records) {
        let _ = writeln!(
            table,
            "{:>9}  {:<8}  {:>8}  {:>8}  {:>9}",
            r.iteration, r.mode, r.vertex_count, r.reduced_edge_count, r.interval_count
        );
    }
}

pub fn compare(input: &Path, iterations: usize) -> u8 {
    report((|| {
        let interval_cfg = config(iterations, ArgumentMode::Interval)?;
        let wildcard_cfg = config(iterations, ArgumentMode::Wildcard)?;
        let classes = load(input, &interval_cfg.naming)?;
        let (by_interval, by_wildcard) = thread::scope(|s| {
            let a = s.spawn(|| iterate(&classes, &interval_cfg));
            let b = s.spawn(|| iterate(&classes, &wildcard_cfg));
            (
                a.join().expect("interval run"),
                b.join().expect("wildcard run"),
            )
        });

        let mut failure = None;
        let mut settle = |r: Result<(_, IterationReport), Error>| match r {
            Ok((_, report)) => report,
            Err(Error::BudgetExceeded {
                partial,
                limit,
                iteration,
                ..
            }) => {
                failure = Some(Failure {
                    code: EXIT_BUDGET,
                    message: format!(
                        "{}: vertex budget of {limit} exceeded at iteration {}",
                        input.display(),
                        iteration.unwrap_or(0)
                    ),
                });
                partial.map(|p| *p).unwrap_or_default()
            }
            Err(e) => {
                failure = Some(Failure::from_error(input, e));
                IterationReport::default()
            }
        };
        let interval_report = settle(by_interval);
        let wildcard_report = settle(by_wildcard);
        if let Some(Failure {
            code: EXIT_PARSE, ..
        }) = &failure
        {
            return Err(failure.expect("just matched"));
        }

        let mut table = format!(
            "{:>9}  {:<8}  {:>8}  {:>8}  {:>9}\n",
            "iteration", "mode", "vertices", "edges", "intervals"
        );
        let mut rows: Vec<_> = interval_report
            .records
            .iter()
            .chain(&wildcard_report.records)
            .collect();
        rows.sort_by_key(|r| (r.iteration, r.mode));
        let merged = IterationReport {
            records: rows.into_iter().cloned().collect(),
        };
        render_rows(&mut table, &[&merged]);
        table.push('\n');
        let _ = writeln!(table, "{:>9}  {:>12}", "iteration", "vertex delta");
        for (a, b) in interval_report.records.iter().zip(&wildcard_report.records) {
            let delta = a.vertex_count as i64 - b.vertex_count as i64;
            let _ = writeln!(table, "{:>9}  {delta:>12}", a.iteration);
        }
        print!("{table}");
        match failure {
            Some(f) => Err(f),
            None => Ok(EXIT_OK),
        }
    })())
}

pub fn query(input: &Path, iterations: usize, mode: ArgumentMode, text: &str) -> u8 {
    report((|| {
        let cfg = config(iterations, mode)?;
        let (sub, sup) = parse_subtype_query(text, &cfg.naming).map_err(|e| Failure {
            code: EXIT_PARSE,
            message: format!("query {text:?}: {e}"),
        })?;
        let classes = load(input, &cfg.naming)?;
        let (s, _) = iterate(&classes, &cfg).map_err(|e| Failure::from_error(input, e))?;
        Ok(match query_subtype(&s, &sub, &sup) {
            SubtypeAnswer::Subtype => {
                println!("true");
                EXIT_OK
            }
            SubtypeAnswer::NotSubtype => {
                println!("false");
                EXIT_FALSE
            }
            SubtypeAnswer::Unknown => {
                println!("unknown (type not materialized at depth {iterations})");
                EXIT_UNKNOWN
            }
        })
    })())
}
