//! The `dqrb` command line.
//!
//! Exit codes: 0 success / in family, 1 not Rota–Baxter (or failed
//! self-test), 2 input error, 3 resource limit, 4 Rota–Baxter outside the
//! known families.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::algebra::StructureTable;
use crate::classify::{audit_completeness, classify, AuditReport, ClassificationResult};
use crate::groebner::{buchberger, saturate_weight, BuchbergerStats, GroebnerError, Limits};
use crate::operator::{find_defect, DefectWitness, OperatorMatrix};
use crate::order::{OrderKind, TermOrder};
use crate::scalar::{parse_scalar_list, Scalar};
use crate::selftest::run_selftest;
use crate::system::{generate_system, parse_paper_system, PolySystem, SystemJson, WeightMode};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_ROTA_BAXTER: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_OUTSIDE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "dqrb", version, about = "Rota-Baxter operators on the dual quaternions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Rota-Baxter identity on all basis pairs.
    Verify(MatrixArgs),
    /// Place an operator in one of the known families.
    Classify(MatrixArgs),
    /// Emit the 64-polynomial constraint system.
    Generate(GenerateArgs),
    /// Compute a reduced Gröbner basis of a system.
    Reduce(ReduceArgs),
    /// Enumerate a grid of candidate operators and classify the solutions.
    Audit(AuditArgs),
    /// Run the invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct MatrixArgs {
    /// Operator matrix JSON: `{"entries": [[...], ...]}` or a bare 4×4 array.
    pub matrix: PathBuf,
    /// Weight: a rational `p/q`.
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub weight: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    /// `0`, `sym`, or a rational `p/q`.
    #[arg(long, default_value = "sym", allow_hyphen_values = true)]
    pub weight: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// System as JSON or as `label: polynomial` lines.
    pub system: PathBuf,
    #[arg(long, default_value = "grevlex")]
    pub order: String,
    #[arg(long, default_value_t = Limits::default().max_pairs)]
    pub max_pairs: usize,
    #[arg(long, default_value_t = Limits::default().max_degree)]
    pub max_degree: u32,
    /// Adjoin `t*l - 1`, i.e. treat the weight as invertible.
    #[arg(long)]
    pub saturate: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    pub weight: String,
    /// Comma-separated rationals.
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    pub grid: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Structure table JSON to test instead of the built-in one.
    #[arg(long, hide = true)]
    pub table: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Limit(String),
}

struct Outcome {
    report: String,
    code: i32,
}

fn input<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(input(&path.display().to_string()))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn numeric_weight(text: &str) -> Result<Scalar, Failure> {
    match text.parse::<WeightMode>().map_err(input("--weight"))? {
        WeightMode::Zero => Ok(Scalar::zero()),
        WeightMode::Fixed(c) => Ok(c),
        WeightMode::Symbolic => Err(Failure::Input("--weight: this command needs a numeric weight".into())),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Wrapped(OperatorMatrix),
    Bare([[Scalar; 4]; 4]),
}

pub fn read_matrix(path: &Path) -> Result<OperatorMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    match serde_json::from_str::<MatrixFile>(&text) {
        Ok(MatrixFile::Wrapped(m)) => Ok(m),
        Ok(MatrixFile::Bare(entries)) => Ok(OperatorMatrix::new(entries)),
        Err(e) => Err(format!("{}: expected a 4x4 matrix of rationals ({e})", path.display())),
    }
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    weight: &'a Scalar,
    rota_baxter: bool,
    witness: Option<&'a DefectWitness>,
}

fn cmd_verify(args: &MatrixArgs) -> Result<Outcome, Failure> {
    let lambda = numeric_weight(&args.weight)?;
    let m = read_matrix(&args.matrix).map_err(Failure::Input)?;
    let witness = find_defect(&m, &lambda);
    let code = if witness.is_some() { EXIT_NOT_ROTA_BAXTER } else { EXIT_OK };
    let report = match args.output.format {
        Format::Json => {
            json(&VerifyJson { weight: &lambda, rota_baxter: witness.is_none(), witness: witness.as_ref() })
        }
        Format::Text => match &witness {
            None => format!("ROTA-BAXTER\nweight: {lambda}\n"),
            Some(w) => format!("NOT ROTA-BAXTER\nweight: {lambda}\nwitness: {w}\n"),
        },
    };
    Ok(Outcome { report, code })
}

#[derive(Serialize)]
struct ClassifyJson<'a> {
    weight: &'a Scalar,
    #[serde(flatten)]
    result: &'a ClassificationResult,
}

fn cmd_classify(args: &MatrixArgs) -> Result<Outcome, Failure> {
    let lambda = numeric_weight(&args.weight)?;
    let m = read_matrix(&args.matrix).map_err(Failure::Input)?;
    let result = classify(&m, &lambda);
    let code = match &result {
        ClassificationResult::NotRotaBaxter { .. } => EXIT_NOT_ROTA_BAXTER,
        ClassificationResult::InFamily { .. } => EXIT_OK,
        ClassificationResult::OutsideKnownFamilies { .. } => EXIT_OUTSIDE,
    };
    let report = match args.output.format {
        Format::Json => json(&ClassifyJson { weight: &lambda, result: &result }),
        Format::Text => format!("{result}\nweight: {lambda}\n"),
    };
    Ok(Outcome { report, code })
}

fn cmd_generate(args: &GenerateArgs) -> Result<Outcome, Failure> {
    let mode: WeightMode = args.weight.parse().map_err(input("--weight"))?;
    let system = generate_system(&mode);
    let report = match args.output.format {
        Format::Json => json(&system.to_json()),
        Format::Text => system.to_text(),
    };
    Ok(Outcome { report, code: EXIT_OK })
}

pub fn read_system(text: &str) -> Result<PolySystem, String> {
    if text.trim_start().starts_with('{') {
        let parsed: SystemJson = serde_json::from_str(text).map_err(|e| format!("system JSON: {e}"))?;
        PolySystem::from_json(&parsed).map_err(|e| e.to_string())
    } else {
        parse_paper_system(text).map_err(|e| {
            e.errors
                .iter()
                .map(|p| format!("line {}, column {}: {}", p.line, p.column, p.message))
                .collect::<Vec<_>>()
                .join("\n")
        })
    }
}

#[derive(Serialize)]
struct BasisJson {
    order: String,
    #[serde(flatten)]
    system: SystemJson,
    stats: BuchbergerStats,
}

fn cmd_reduce(args: &ReduceArgs) -> Result<Outcome, Failure> {
    let kind: OrderKind = args.order.parse().map_err(input("--order"))?;
    let order = TermOrder::natural(kind);
    let text = read(&args.system)?;
    let mut system = read_system(&text).map_err(|e| Failure::Input(format!("{}: {e}", args.system.display())))?;
    if system.polynomials().all(|p| p.is_zero()) {
        return Err(Failure::Input(format!("{}: system has no nonzero polynomial", args.system.display())));
    }
    if args.saturate {
        system = saturate_weight(&system);
    }
    let limits = Limits { max_pairs: args.max_pairs, max_degree: args.max_degree };
    let basis = buchberger(&system, &order, limits).map_err(|e| match e {
        GroebnerError::EmptyInput => Failure::Input(e.to_string()),
        other => Failure::Limit(other.to_string()),
    })?;
    let mut out = PolySystem::new(None);
    for (n, g) in basis.generators.iter().enumerate() {
        out.push(format!("g{}", n + 1), g.clone());
    }
    let report = match args.output.format {
        Format::Json => json(&BasisJson { order: order.descriptor(), system: out.to_json(), stats: basis.stats }),
        Format::Text => {
            format!("# order: {}\n# generators: {}\n{}", order.descriptor(), basis.len(), out.to_text())
        }
    };
    Ok(Outcome { report, code: EXIT_OK })
}

fn audit_text(r: &AuditReport) -> String {
    let mut s = String::new();
    let grid: Vec<String> = r.grid.iter().map(ToString::to_string).collect();
    s.push_str(&format!("weight: {}\ngrid: {}\nfree entries: {}\n", r.mode, grid.join(","), r.free_entries.join(" ")));
    s.push_str(&format!("candidates: {}\nsolutions: {}\n", r.candidates, r.solutions));
    for (family, n) in &r.by_family {
        s.push_str(&format!("  {family}: {n}\n"));
    }
    if let Some(z) = &r.zero_operator {
        s.push_str(&format!("zero operator: {}\n", z.note));
    }
    if r.outside_count > 0 {
        s.push_str(&format!(
            "outside known families: {} (first {} listed)\n",
            r.outside_count,
            r.outside_examples.len()
        ));
        for m in &r.outside_examples {
            s.push_str(&format!("  {m}\n"));
        }
    }
    for p in &r.forced_zero_probes {
        s.push_str(&format!("Rota-Baxter with {} = {} (held at 0 by the grid): {}\n", p.entry, p.value, p.matrix));
    }
    for i in &r.inconsistencies {
        s.push_str(&format!(
            "INCONSISTENT {}: system vanishes={} rota-baxter={}\n",
            i.matrix, i.satisfies_generated_system, i.is_rota_baxter
        ));
    }
    s
}

fn cmd_audit(args: &AuditArgs) -> Result<Outcome, Failure> {
    let lambda = numeric_weight(&args.weight)?;
    let grid = parse_scalar_list(&args.grid).map_err(input("--grid"))?;
    if grid.is_empty() {
        return Err(Failure::Input("--grid: empty".into()));
    }
    let report = audit_completeness(&lambda, &grid);
    let code = if report.inconsistencies.is_empty() { EXIT_OK } else { EXIT_NOT_ROTA_BAXTER };
    let text = match args.output.format {
        Format::Json => json(&report),
        Format::Text => audit_text(&report),
    };
    Ok(Outcome { report: text, code })
}

fn cmd_selftest(args: &SelftestArgs) -> Result<Outcome, Failure> {
    let table = match &args.table {
        None => StructureTable::dual_quaternion(),
        Some(path) => serde_json::from_str(&read(path)?).map_err(input(&path.display().to_string()))?,
    };
    let report = run_selftest(&table);
    let code = if report.mandatory_passed() { EXIT_OK } else { EXIT_NOT_ROTA_BAXTER };
    let text = match args.output.format {
        Format::Json => json(&report),
        Format::Text => report.to_string(),
    };
    Ok(Outcome { report: text, code })
}

fn output_args(cmd: &Command) -> &OutputArgs {
    match cmd {
        Command::Verify(a) | Command::Classify(a) => &a.output,
        Command::Generate(a) => &a.output,
        Command::Reduce(a) => &a.output,
        Command::Audit(a) => &a.output,
        Command::Selftest(a) => &a.output,
    }
}

/// Parses `args` (including the program name), runs the command, and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational =
                matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let sink: &mut dyn Write = if informational { stdout } else { stderr };
            let _ = write!(sink, "{}", e.render());
            return if informational { EXIT_OK } else { EXIT_INPUT };
        }
    };
    let result = match &cli.command {
        Command::Verify(a) => cmd_verify(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Reduce(a) => cmd_reduce(a),
        Command::Audit(a) => cmd_audit(a),
        Command::Selftest(a) => cmd_selftest(a),
    };
    match result {
        Ok(outcome) => {
            let written = match &output_args(&cli.command).out {
                Some(path) => fs::write(path, &outcome.report).map_err(|e| format!("{}: {e}", path.display())),
                None => stdout.write_all(outcome.report.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    EXIT_INPUT
                }
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Limit(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_LIMIT
        }
    }
}
