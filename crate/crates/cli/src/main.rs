use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hamilton::expr::{self, parse_with_mode};
use hamilton::fueter::{self, FueterConfig, Method, Side};
use hamilton::report::RegularityReport;
use hamilton::slice::{self, ResidualSide, SliceConfig};
use hamilton::structure::{self, ContradictionReport, DivisionVerdict, StructureTable};
use hamilton::{unit_table, ExprError, Mode, NumericError, Quaternion, Scalar};
use serde_json::json;

#[derive(Parser)]
#[command(name = "hamilton", version, about = "Quaternion algebra, regularity checks and structure reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarMode {
    Exact,
    Float,
}

impl From<ScalarMode> for Mode {
    fn from(m: ScalarMode) -> Mode {
        match m {
            ScalarMode::Exact => Mode::Exact,
            ScalarMode::Float => Mode::Float,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Fueter,
    Slice,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Symbolic,
    Numeric,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Exp,
    Geometric,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression at a point.
    Eval {
        expr: String,
        /// Point as w,x,y,z.
        #[arg(long, default_value = "0,0,0,0", allow_hyphen_values = true)]
        at: String,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ScalarMode,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the multiplication table of 1, i, j, k.
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check Fueter or slice regularity; exits 1 when not regular.
    Check(CheckArgs),
    /// Derivations and certificates for small real algebras.
    Structure(StructureArgs),
    /// Evaluate a power series with coefficients on the left.
    Series(SeriesArgs),
}

#[derive(Args)]
struct CheckArgs {
    expr: String,
    #[arg(long, value_enum, default_value = "fueter")]
    mode: CheckMode,
    #[arg(long, value_enum, default_value = "left")]
    side: SideArg,
    #[arg(long, value_enum, default_value = "symbolic")]
    method: MethodArg,
    #[arg(long, default_value_t = 1e-5)]
    h: f64,
    #[arg(long, default_value_t = 1e-6)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Sample points (Fueter, default 25) or points per slice (slice, default 10).
    #[arg(long)]
    samples: Option<usize>,
    /// Number of slices for slice mode.
    #[arg(long, default_value_t = 8)]
    slices: usize,
    /// Side I multiplies from in the slice residual.
    #[arg(long, value_enum, default_value = "right")]
    slice_side: SideArg,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Selector {
    Triplets,
    General,
    JiPlusK,
    Bicomplex,
    CertifyQuaternions,
    Certify,
}

#[derive(Args)]
struct StructureArgs {
    #[arg(value_enum)]
    selector: Selector,
    /// Random trials for division checks.
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Table to certify (JSON), for `certify`.
    #[arg(long)]
    table: Option<PathBuf>,
    /// Write the table used to this file as JSON.
    #[arg(long)]
    export: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct SeriesArgs {
    /// Coefficients a0;a1;... as constant expressions.
    #[arg(long, conflicts_with = "family", required_unless_present = "family", allow_hyphen_values = true)]
    coeffs: Option<String>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long, default_value = "0,0,0,0", allow_hyphen_values = true)]
    at: String,
    /// Highest power N summed.
    #[arg(long, default_value_t = 20)]
    terms: usize,
    #[arg(long, default_value_t = 1e-12)]
    tail_tol: f64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

/// A failure that ends the command with exit code 2.
struct Failure(String);

impl Failure {
    fn expr(source: &str, e: &ExprError) -> Self {
        Failure(e.render(source))
    }

    fn numeric(source: &str, e: NumericError) -> Self {
        match e {
            NumericError::Expr(e) => Failure::expr(source, &e),
            other => Failure(other.to_string()),
        }
    }
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn parse_point(text: &str, mode: Mode) -> Result<Quaternion, Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err(Failure(format!("point must be w,x,y,z; got {text:?}")));
    }
    let c: Vec<Scalar> = parts.iter().map(|p| Scalar::parse(p, mode)).collect::<Result<_, _>>()?;
    Ok(Quaternion::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())?)
}

macro_rules! out {
    ($($arg:tt)*) => {
        emit(&format!($($arg)*))
    };
}

/// Writes one line to stdout; a closed pipe ends the process quietly.
fn emit(line: &str) {
    let mut stdout = std::io::stdout().lock();
    if let Err(e) = writeln!(stdout, "{line}") {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("failed writing to stdout: {e}");
    }
}

fn print_json(v: serde_json::Value) {
    out!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
}

fn cmd_eval(expr_text: &str, at: &str, mode: Mode, format: Format) -> Result<u8, Failure> {
    let e = parse_with_mode(expr_text, mode).map_err(|e| Failure::expr(expr_text, &e))?;
    let q = parse_point(at, mode)?;
    let v = expr::eval(&e, &q)?;
    match format {
        Format::Text => out!("{v}"),
        Format::Json => print_json(json!(v)),
    }
    Ok(0)
}

fn cmd_table(format: Format) -> Result<u8, Failure> {
    let t = unit_table();
    let names = ["1", "i", "j", "k"];
    match format {
        Format::Text => {
            out!("{:>3} {}", "", names.map(|n| format!("{n:>3}")).join(" "));
            for (a, row) in t.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|c| format!("{:>3}", c.to_string())).collect();
                out!("{:>3} {}", names[a], cells.join(" "));
            }
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = t.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
            print_json(json!({ "basis": names, "table": rows }));
        }
    }
    Ok(0)
}

fn cmd_check(a: &CheckArgs) -> Result<u8, Failure> {
    let e = parse_with_mode(&a.expr, Mode::Exact).map_err(|err| Failure::expr(&a.expr, &err))?;
    let report: RegularityReport = match a.mode {
        CheckMode::Fueter => {
            let side = match a.side {
                SideArg::Left => Side::Left,
                SideArg::Right => Side::Right,
            };
            let method = match a.method {
                MethodArg::Symbolic => Method::Symbolic,
                MethodArg::Numeric => Method::Numeric,
            };
            let config = FueterConfig { h: a.h, tol: a.tol, seed: a.seed, samples: a.samples.unwrap_or(25), ..FueterConfig::default() };
            fueter::is_regular(&e, side, method, &config).map_err(|err| Failure::numeric(&a.expr, err))?
        }
        CheckMode::Slice => {
            let config = SliceConfig {
                num_slices: a.slices,
                num_points: a.samples.unwrap_or(10),
                h: a.h,
                tol: a.tol,
                seed: a.seed,
                side: match a.slice_side {
                    SideArg::Left => ResidualSide::Left,
                    SideArg::Right => ResidualSide::Right,
                },
                ..SliceConfig::default()
            };
            slice::is_slice_regular(&e, &config).map_err(|err| Failure::numeric(&a.expr, err))?
        }
    };
    match a.format {
        Format::Text => print!("{report}"),
        Format::Json => out!("{}", report.to_json()),
    }
    Ok(if report.is_regular() { 0 } else { 1 })
}

fn print_reports(reports: &[ContradictionReport], format: Format) {
    match format {
        Format::Text => {
            for r in reports {
                print!("{}", r.render_text());
            }
            let contradictions = reports.iter().filter(|r| r.verdict != structure::Verdict::Consistent).count();
            out!("{} cases, {} contradictions", reports.len(), contradictions);
        }
        Format::Json => print_json(json!(reports.iter().map(ContradictionReport::to_json).collect::<Vec<_>>())),
    }
}

fn division_text(table: &StructureTable, v: &DivisionVerdict) -> String {
    match v {
        DivisionVerdict::Certified { trials, scanned, .. } => {
            format!("Certified: {scanned} sign elements scanned and {trials} random elements sampled, all invertible\n")
        }
        DivisionVerdict::ZeroDivisorWitness(a, b) => {
            format!("ZeroDivisorWitness: ({})({})=0\n", table.render(a), table.render(b))
        }
    }
}

fn cmd_structure(a: &StructureArgs) -> Result<u8, Failure> {
    let mut export_table = None;
    match a.selector {
        Selector::Triplets => print_reports(&structure::triplet_case_analysis(), a.format),
        Selector::General => print_reports(&[structure::triplet_general_obstruction()], a.format),
        Selector::JiPlusK | Selector::Bicomplex | Selector::CertifyQuaternions | Selector::Certify => {
            let (table, report) = match a.selector {
                Selector::JiPlusK => (structure::ji_plus_k_table(), Some(structure::ji_equals_k_zero_divisors())),
                Selector::Bicomplex => (structure::bicomplex_table(), None),
                Selector::CertifyQuaternions => (structure::quaternion_table(), None),
                _ => {
                    let path = a.table.as_ref().ok_or_else(|| Failure("certify needs --table FILE".into()))?;
                    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    let json = serde_json::from_str(&text).map_err(|e| Failure(format!("{}: {e}", path.display())))?;
                    (StructureTable::from_json(json)?, None)
                }
            };
            let verdict = structure::division_check(&table, a.samples, a.seed)?;
            match a.format {
                Format::Text => {
                    if let Some(r) = &report {
                        print!("{}", r.render_text());
                    }
                    print!("{}", division_text(&table, &verdict));
                }
                Format::Json => {
                    let mut out = json!({ "table": table.to_json(), "division": verdict.to_json(&table) });
                    if let Some(r) = &report {
                        out["report"] = r.to_json();
                    }
                    print_json(out);
                }
            }
            export_table = Some(table);
        }
    }
    if let Some(path) = &a.export {
        let table = export_table.ok_or_else(|| Failure("--export needs a table selector".into()))?;
        let text = serde_json::to_string_pretty(&table.to_json())?;
        fs::write(path, text + "\n").map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    }
    Ok(0)
}

fn cmd_series(a: &SeriesArgs) -> Result<u8, Failure> {
    let q = parse_point(&a.at, Mode::Float)?;
    let value = match (a.family, &a.coeffs) {
        (Some(Family::Exp), _) => {
            let mut fact = vec![1.0_f64];
            for k in 1..=a.terms + slice::TAIL_TERMS {
                fact.push(fact[k - 1] * k as f64);
            }
            slice::series_eval(|k| Quaternion::float(1.0 / fact[k], 0.0, 0.0, 0.0), &q, a.terms, a.tail_tol)?
        }
        (Some(Family::Geometric), _) => slice::series_eval(|_| Quaternion::float(1.0, 0.0, 0.0, 0.0), &q, a.terms, a.tail_tol)?,
        (None, Some(text)) => {
            let coeffs = text
                .split(';')
                .map(|c| {
                    let e = parse_with_mode(c.trim(), Mode::Float).map_err(|err| Failure::expr(c.trim(), &err))?;
                    Ok(expr::eval(&e, &Quaternion::zero(Mode::Float))?)
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            slice::series_eval_list(&coeffs, &q, a.terms, a.tail_tol)?
        }
        (None, None) => return Err(Failure("give --coeffs or --family".into())),
    };
    match a.format {
        Format::Text => {
            out!("value: {}", value.value);
            match value.truncation_bound {
                Some(b) => out!("truncation bound: {b:e}"),
                None => out!("divergent: |q| is at or beyond the radius estimate {}", value.radius_estimate),
            }
        }
        Format::Json => print_json(json!(value)),
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Eval { expr, at, mode, format } => cmd_eval(expr, at, (*mode).into(), *format),
        Command::Table { format } => cmd_table(*format),
        Command::Check(a) => cmd_check(a),
        Command::Structure(a) => cmd_structure(a),
        Command::Series(a) => cmd_series(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

