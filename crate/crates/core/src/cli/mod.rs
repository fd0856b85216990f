//! Command-line front end: argument validation, dispatch and output.

pub mod output;
pub mod parse;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{BiPoly, ExtendedNat, ParamCurve};
use crate::catalog::{
    self, entry_by_id, family_matches, table_entries, table_row, verify_entry, Table, TableRow, ValueStatus,
};
use crate::error::{CurveError, Result};
use crate::intersection::{intersection_multiplicity, intersection_via_param_with, milnor_number};
use crate::invariants::{
    circle_contact, eq_invariants, evolute, inflection_count_eq, param_invariants, relation_report,
    sqh_inflection_count, ReportOptions, Trunc,
};
pub use output::Format;
pub use parse::{parse_poly, parse_series, parse_tpoly};

#[derive(Parser, Debug)]
#[command(
    name = "curveinv",
    version,
    about = "Exact inflection and vertex counts of plane curve germs at the origin"
)]
pub struct Cli {
    /// Starting series truncation.
    #[arg(long, default_value_t = 64, global = true)]
    pub trunc: usize,
    /// Largest truncation tried before giving up.
    #[arg(long, default_value_t = 1024, global = true)]
    pub max_trunc: usize,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for the coordinate changes used by cross-checks.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub verb: Verb,
}

#[derive(Subcommand, Debug)]
pub enum Verb {
    /// Multiplicity, Milnor number, I_f and V_f of f(x, y) = 0.
    EqInvariants {
        #[arg(allow_hyphen_values = true)]
        f: String,
        /// Number of branches, when known (enables delta).
        #[arg(long)]
        branches: Option<usize>,
    },
    /// I_gamma, V_gamma, beta and lambda of t -> (x(t), y(t)).
    ParamInvariants {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// m(f, g); with --x/--y, the order of g along the parametrised branch instead.
    Intersect {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "y")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "x")]
        y: Option<String>,
    },
    /// Milnor number m(f_x, f_y).
    Milnor {
        #[arg(allow_hyphen_values = true)]
        f: String,
    },
    /// Highest-contact circle through the origin.
    Contact {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Centres of curvature of a regular parametrised germ.
    Evolute {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
    },
    /// Closed-form I_f of a semi-quasihomogeneous germ, against the intersection route.
    Sqh {
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(long)]
        w1: u32,
        #[arg(long)]
        w2: u32,
    },
    /// Every cross-check for an equation with branch data, or for catalog entries.
    Verify {
        #[arg(allow_hyphen_values = true, conflicts_with_all = ["catalog", "all"])]
        f: Option<String>,
        /// Branch "x(t), y(t)"; repeat once per branch.
        #[arg(long = "branch", allow_hyphen_values = true)]
        branches: Vec<String>,
        /// Defining equation of a branch, in branch order.
        #[arg(long = "factor", allow_hyphen_values = true)]
        factors: Vec<String>,
        /// Catalog id such as simple:E6 or asimple:Wsharp[q=1].
        #[arg(long, conflicts_with = "all")]
        catalog: Option<String>,
        /// Verify every catalog entry.
        #[arg(long)]
        all: bool,
    },
    /// Catalog entries with expected values and provenance.
    Catalog {
        #[arg(long)]
        table: Option<String>,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
    /// Expected against computed I_f, V_f for a table.
    Table {
        /// simple or asimple
        table: String,
        /// Family tag, or a single letter for every family starting with it.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 4)]
        k_max: u32,
    },
}

/// Exit code and captured streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_TRUNCATION: i32 = 3;

fn exit_code(e: &CurveError) -> i32 {
    match e {
        CurveError::TruncationInsufficient(_) => EXIT_TRUNCATION,
        CurveError::Parse { .. } | CurveError::RangeError { .. } => EXIT_USAGE,
        _ => EXIT_MATH,
    }
}

struct Usage(String);

enum Failure {
    Usage(Usage),
    Math(CurveError),
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        Failure::Math(e)
    }
}

impl From<Usage> for Failure {
    fn from(u: Usage) -> Self {
        Failure::Usage(u)
    }
}

/// Result of a verb before rendering: a JSON body, optional CSV/text tables, and
/// whether hard checks failed.
struct Report {
    body: Value,
    rows: Option<Vec<TableRow>>,
    failed: bool,
}

impl Report {
    fn of<T: Serialize>(v: &T) -> Report {
        Report {
            body: serde_json::to_value(v).expect("results serialise"),
            rows: None,
            failed: false,
        }
    }
}

fn curve(x: &str, y: &str, trunc: usize) -> Result<ParamCurve> {
    ParamCurve::from_polys(parse_tpoly(x)?, parse_tpoly(y)?, trunc)
}

/// Strips one pair of parentheses when they wrap the whole text.
fn unwrap_parens(s: &str) -> &str {
    let s = s.trim();
    if !(s.starts_with('(') && s.ends_with(')')) {
        return s;
    }
    let mut depth = 0i32;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && k + 1 < s.len() {
            return s;
        }
    }
    &s[1..s.len() - 1]
}

fn branch(text: &str, trunc: usize) -> std::result::Result<ParamCurve, Failure> {
    let (x, y) = unwrap_parens(text)
        .split_once(',')
        .ok_or_else(|| Usage(format!("branch {:?} must be \"x(t), y(t)\"", text)))?;
    Ok(curve(x, y, trunc)?)
}

fn with_input(input: &BiPoly, mut body: Value) -> Value {
    if let Value::Object(m) = &mut body {
        m.insert("input".into(), Value::String(input.to_string()));
    }
    body
}

fn dispatch(cli: &Cli) -> std::result::Result<Report, Failure> {
    let t = Trunc {
        start: cli.trunc,
        max: cli.max_trunc,
    };
    if cli.trunc == 0 || cli.max_trunc < cli.trunc {
        return Err(Usage("need 1 <= --trunc <= --max-trunc".into()).into());
    }
    if cli.format == Format::Csv && !matches!(cli.verb, Verb::Table { .. }) {
        return Err(Usage("--format csv is only available for the table verb".into()).into());
    }
    match &cli.verb {
        Verb::EqInvariants { f, branches } => {
            let f = parse_poly(f)?;
            let r = eq_invariants(&f, *branches)?;
            Ok(Report {
                body: with_input(&f, serde_json::to_value(&r).expect("serialise")),
                rows: None,
                failed: false,
            })
        }
        Verb::ParamInvariants { x, y } => {
            let g = curve(x, y, cli.trunc)?;
            let mut r = Report::of(&param_invariants(&g, t)?);
            if let Value::Object(m) = &mut r.body {
                m.insert("input".into(), Value::String(g.to_string()));
            }
            Ok(r)
        }
        Verb::Intersect { f, g, x, y } => {
            let (value, route): (ExtendedNat, &str) = match (g, x, y) {
                (Some(g), None, None) => (
                    intersection_multiplicity(&parse_poly(f)?, &parse_poly(g)?)?,
                    "equations",
                ),
                (None, Some(x), Some(y)) => {
                    let c = curve(x, y, cli.trunc)?;
                    (
                        intersection_via_param_with(&parse_poly(f)?, &c, cli.trunc, cli.max_trunc)?,
                        "parametrisation",
                    )
                }
                _ => {
                    return Err(
                        Usage("intersect takes either two equations or one equation with --x/--y".into()).into(),
                    )
                }
            };
            Ok(Report::of(&json!({"m": value, "route": route})))
        }
        Verb::Milnor { f } => {
            let f = parse_poly(f)?;
            let mu = milnor_number(&f)?;
            Ok(Report::of(
                &json!({"milnor": mu, "mult": f.multiplicity()?, "input": f.to_string()}),
            ))
        }
        Verb::Contact { x, y } => {
            let g = curve(x, y, cli.trunc)?;
            Ok(Report::of(&circle_contact(&g, t)?))
        }
        Verb::Evolute { x, y } => {
            let g = curve(x, y, cli.trunc)?;
            let e = evolute(&g, t)?;
            Ok(Report::of(&json!({
                "x": e.x.to_string(),
                "y": e.y.to_string(),
                "x_trunc": e.x.trunc(),
                "y_trunc": e.y.trunc(),
            })))
        }
        Verb::Sqh { f, w1, w2 } => {
            let f = parse_poly(f)?;
            let closed = sqh_inflection_count(&f, *w1, *w2)?;
            let fulton = inflection_count_eq(&f)?.value;
            Ok(Report {
                body: json!({"sqh": closed, "fulton": fulton, "agree": closed == fulton, "input": f.to_string()}),
                rows: None,
                failed: closed != fulton,
            })
        }
        Verb::Verify {
            f,
            branches,
            factors,
            catalog: id,
            all,
        } => {
            if *all {
                let entries = catalog::catalog();
                let reports: Vec<catalog::EntryReport> = entries
                    .par_iter()
                    .map(|e| verify_entry(e, t, cli.seed))
                    .collect::<Result<_>>()?;
                let ok = reports.iter().all(|r| r.ok());
                return Ok(Report {
                    body: json!({"ok": ok, "entries": reports}),
                    rows: None,
                    failed: !ok,
                });
            }
            if let Some(id) = id {
                let e = entry_by_id(id)?;
                let r = verify_entry(&e, t, cli.seed)?;
                let ok = r.ok();
                let mut body = serde_json::to_value(&r).expect("serialise");
                body["ok"] = Value::Bool(ok);
                return Ok(Report {
                    body,
                    rows: None,
                    failed: !ok,
                });
            }
            let Some(f) = f else {
                return Err(Usage("verify needs an equation, --catalog ID or --all".into()).into());
            };
            let f = parse_poly(f)?;
            let bs = branches
                .iter()
                .map(|b| branch(b, cli.trunc))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            let fs = factors.iter().map(|g| parse_poly(g)).collect::<Result<Vec<_>>>()?;
            if !fs.is_empty() && fs.len() != bs.len() {
                return Err(Usage("give one --factor per --branch".into()).into());
            }
            let opts = ReportOptions {
                trunc: t,
                seed: cli.seed,
                factors: fs,
            };
            let v = relation_report(&f, &bs, &opts)?;
            let ok = v.relations.hard_failures().is_empty();
            let mut body = with_input(&f, serde_json::to_value(&v).expect("serialise"));
            body["ok"] = Value::Bool(ok);
            Ok(Report {
                body,
                rows: None,
                failed: !ok,
            })
        }
        Verb::Catalog { table, k_max } => {
            let entries = match table.as_deref() {
                None => {
                    let mut v = table_entries(Table::Simple, *k_max);
                    v.extend(table_entries(Table::Asimple, *k_max));
                    v
                }
                Some(name) => table_entries(name.parse().map_err(Usage)?, *k_max),
            };
            Ok(Report::of(&json!({"entries": entries})))
        }
        Verb::Table { table, family, k_max } => {
            let which: Table = table.parse().map_err(Usage)?;
            let entries: Vec<_> = table_entries(which, *k_max)
                .into_iter()
                .filter(|e| family.as_deref().is_none_or(|p| family_matches(p, e.family)))
                .collect();
            if entries.is_empty() {
                return Err(Usage("no catalog rows match".into()).into());
            }
            let rows: Vec<TableRow> = entries.par_iter().map(table_row).collect::<Result<_>>()?;
            let failed = rows.iter().any(|r| r.status == ValueStatus::Fail);
            Ok(Report {
                body: json!({"table": which, "rows": rows}),
                rows: Some(rows),
                failed,
            })
        }
    }
}

fn opt(v: &Option<ExtendedNat>) -> String {
    v.map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

fn status_text(s: ValueStatus) -> &'static str {
    match s {
        ValueStatus::Pass => "pass",
        ValueStatus::Fail => "fail",
        ValueStatus::KnownDiscrepancy => "known-discrepancy",
    }
}

fn render(cli: &Cli, command: &str, r: &Report) -> String {
    match (cli.format, &r.rows) {
        (Format::Csv, Some(rows)) => output::csv_rows(rows),
        (Format::Text, Some(rows)) => {
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.family.clone(),
                        r.params.clone(),
                        opt(&r.i_expected),
                        r.i_computed.to_string(),
                        opt(&r.v_expected),
                        r.v_computed.to_string(),
                        status_text(r.status).to_string(),
                    ]
                })
                .collect();
            output::text_table(
                &[
                    "family",
                    "params",
                    "I_expected",
                    "I_computed",
                    "V_expected",
                    "V_computed",
                    "status",
                ],
                &cells,
            )
        }
        (Format::Text, None) => output::text(&output::envelope(command, r.body.clone())),
        _ => output::json(&output::envelope(command, r.body.clone())),
    }
}

fn verb_name(v: &Verb) -> &'static str {
    match v {
        Verb::EqInvariants { .. } => "eq-invariants",
        Verb::ParamInvariants { .. } => "param-invariants",
        Verb::Intersect { .. } => "intersect",
        Verb::Milnor { .. } => "milnor",
        Verb::Contact { .. } => "contact",
        Verb::Evolute { .. } => "evolute",
        Verb::Sqh { .. } => "sqh",
        Verb::Verify { .. } => "verify",
        Verb::Catalog { .. } => "catalog",
        Verb::Table { .. } => "table",
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let command = verb_name(&cli.verb);
    match dispatch(&cli) {
        Ok(r) => Outcome {
            code: if r.failed { EXIT_MATH } else { EXIT_OK },
            stdout: render(&cli, command, &r),
            stderr: String::new(),
        },
        Err(Failure::Usage(Usage(msg))) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg),
        },
        Err(Failure::Math(e)) => {
            let body = output::envelope(command, output::error_body(&e));
            Outcome {
                code: exit_code(&e),
                stdout: if cli.format == Format::Text {
                    output::text(&body)
                } else {
                    output::json(&body)
                },
                stderr: format!("error: {}\n", e),
            }
        }
    }
}
