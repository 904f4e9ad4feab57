//! Batch command-line front end.
//!
//! ```text
//! tropt [--json] <verb> <files...>
//! ```
//!
//! Exit codes: 0 success (an unsolvable system is still a success), 2 usage
//! error, 3 unreadable or malformed input, 4 dimension or domain error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::assignment::{hungarian_scaling, maper};
use crate::error::Error;
use crate::matrix::{conjugate, mat_otimes, tensor, vec, TropMatrix};
use crate::semiring::TropScalar;
use crate::solver::{principal_solution, residual_rows, solve_matrix_equation};
use crate::spectral::{eigenpair, is_irreducible};
use crate::text::{parse_equation, parse_matrix};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "tropt", version, about = "Max-plus matrix toolkit")]
struct Args {
    /// Print one JSON document instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    verb: VerbArgs,
}

#[derive(Debug, Subcommand)]
enum VerbArgs {
    /// Tropical permanent, an optimal permutation and the dual scalings.
    Maper { matrix: PathBuf },
    /// Diagonal C, D with C⊗A⊗D ≤ 0 and maper(C⊗A⊗D) = 0.
    Scale { matrix: PathBuf },
    /// Maximum cycle mean with one eigenvector.
    Eig { matrix: PathBuf },
    /// Tensor product A ⊠ B.
    Tensor { left: PathBuf, right: PathBuf },
    /// Max-plus product A ⊗ B.
    Mul { left: PathBuf, right: PathBuf },
    /// Principal solution of A ⊗ x = b.
    Solve { matrix: PathBuf, rhs: PathBuf },
    /// Solve ⊕ᵢ Aᵢ⊗X⊗Bᵢ = C from an equation file.
    Mateq { equation: PathBuf },
    /// Column-major vectorization.
    Vec { matrix: PathBuf },
    /// Conjugate -Aᵀ.
    Conj { matrix: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verb {
    Maper,
    Scale,
    Eig,
    Tensor,
    Mul,
    Solve,
    Mateq,
    Vec,
    Conj,
}

impl Verb {
    /// Number of input files the verb reads.
    pub fn arity(self) -> usize {
        match self {
            Verb::Tensor | Verb::Mul | Verb::Solve => 2,
            _ => 1,
        }
    }
}

/// A parsed invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliCommand {
    pub verb: Verb,
    pub inputs: Vec<PathBuf>,
    pub json: bool,
}

impl From<Args> for CliCommand {
    fn from(args: Args) -> Self {
        let (verb, inputs) = match args.verb {
            VerbArgs::Maper { matrix } => (Verb::Maper, vec![matrix]),
            VerbArgs::Scale { matrix } => (Verb::Scale, vec![matrix]),
            VerbArgs::Eig { matrix } => (Verb::Eig, vec![matrix]),
            VerbArgs::Tensor { left, right } => (Verb::Tensor, vec![left, right]),
            VerbArgs::Mul { left, right } => (Verb::Mul, vec![left, right]),
            VerbArgs::Solve { matrix, rhs } => (Verb::Solve, vec![matrix, rhs]),
            VerbArgs::Mateq { equation } => (Verb::Mateq, vec![equation]),
            VerbArgs::Vec { matrix } => (Verb::Vec, vec![matrix]),
            VerbArgs::Conj { matrix } => (Verb::Conj, vec![matrix]),
        };
        CliCommand {
            verb,
            inputs,
            json: args.json,
        }
    }
}

/// What a process invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
struct Failure {
    status: i32,
    message: String,
}

impl Failure {
    fn from_error(context: &str, err: Error) -> Self {
        let status = match err {
            Error::Parse { .. } => EXIT_PARSE,
            _ => EXIT_DOMAIN,
        };
        let message = match err {
            Error::Parse {
                line,
                column,
                message,
            } => format!("{context}:{line}:{column}: {message}"),
            other => format!("{context}: {other}"),
        };
        Failure { status, message }
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Args::try_parse_from(args) {
        Ok(args) => run(&CliCommand::from(args)),
        Err(err) => {
            let rendered = err.render().to_string();
            if err.use_stderr() {
                Outcome {
                    status: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    status: EXIT_OK,
                    stdout: rendered,
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cmd: &CliCommand) -> Outcome {
    if cmd.inputs.len() != cmd.verb.arity() {
        return Outcome {
            status: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!(
                "expected {} input file(s), got {}\n",
                cmd.verb.arity(),
                cmd.inputs.len()
            ),
        };
    }
    match execute(cmd) {
        Ok(stdout) => Outcome {
            status: EXIT_OK,
            stdout,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            status: f.status,
            stdout: String::new(),
            stderr: format!("tropt: {}\n", f.message),
        },
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        status: EXIT_PARSE,
        message: format!("{}: cannot read: {e}", path.display()),
    })
}

fn load_matrix(path: &Path) -> Result<TropMatrix, Failure> {
    let text = read(path)?;
    parse_matrix(&text).map_err(|e| Failure::from_error(&path.display().to_string(), e))
}

fn execute(cmd: &CliCommand) -> Result<String, Failure> {
    let first = &cmd.inputs[0];
    let ctx = |paths: &[&PathBuf]| -> String {
        paths
            .iter()
            .map(|p| p.display().to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let report = match cmd.verb {
        Verb::Maper => {
            let a = load_matrix(first)?;
            let res = maper(&a).map_err(|e| Failure::from_error(&ctx(&[first]), e))?;
            let perm = res.perm.as_ref().map(|p| p.one_based());
            Report {
                json: json!({
                    "command": "maper",
                    "maper": res.value.to_string(),
                    "permutation": perm,
                    "row_duals": res.row_duals.as_deref().map(scalars_json),
                    "col_duals": res.col_duals.as_deref().map(scalars_json),
                }),
                text: {
                    let mut t = format!("maper = {}\n", res.value);
                    match &res.perm {
                        Some(p) => writeln!(t, "permutation = {p}").ok(),
                        None => writeln!(t, "permutation = none").ok(),
                    };
                    if let (Some(c), Some(d)) = (&res.row_duals, &res.col_duals) {
                        writeln!(t, "row_duals = {}", join(c)).ok();
                        writeln!(t, "col_duals = {}", join(d)).ok();
                    }
                    t
                },
            }
        }
        Verb::Scale => {
            let a = load_matrix(first)?;
            let fail = |e| Failure::from_error(&ctx(&[first]), e);
            let (c, d) = hungarian_scaling(&a).map_err(fail)?;
            let scaled = mat_otimes(&mat_otimes(&c, &a).map_err(fail)?, &d).map_err(fail)?;
            Report {
                json: json!({
                    "command": "scale",
                    "C": matrix_json(&c),
                    "D": matrix_json(&d),
                    "scaled": matrix_json(&scaled),
                }),
                text: format!("C:\n{c}D:\n{d}C*A*D:\n{scaled}"),
            }
        }
        Verb::Eig => {
            let a = load_matrix(first)?;
            let fail = |e| Failure::from_error(&ctx(&[first]), e);
            let res = eigenpair(&a).map_err(fail)?;
            let irreducible = is_irreducible(&a).map_err(fail)?;
            Report {
                json: json!({
                    "command": "eig",
                    "lambda": res.lambda.to_string(),
                    "eigenvector": matrix_json(&res.eigenvector),
                    "finite_eigenvector": res.finite_eigenvector,
                    "irreducible": irreducible,
                }),
                text: format!(
                    "lambda = {}\neigenvector:\n{}irreducible: {}\n",
                    res.lambda,
                    res.eigenvector,
                    yes_no(irreducible)
                ),
            }
        }
        Verb::Tensor | Verb::Mul => {
            let second = &cmd.inputs[1];
            let a = load_matrix(first)?;
            let b = load_matrix(second)?;
            let product = if cmd.verb == Verb::Tensor {
                tensor(&a, &b)
            } else {
                mat_otimes(&a, &b)
            }
            .map_err(|e| Failure::from_error(&ctx(&[first, second]), e))?;
            let name = if cmd.verb == Verb::Tensor { "tensor" } else { "mul" };
            matrix_report(name, &product)
        }
        Verb::Solve => {
            let second = &cmd.inputs[1];
            let a = load_matrix(first)?;
            let b = load_matrix(second)?;
            let fail = |e| Failure::from_error(&ctx(&[first, second]), e);
            let x = principal_solution(&a, &b).map_err(fail)?;
            let residual: Vec<usize> = residual_rows(&a, &b, &x)
                .map_err(fail)?
                .into_iter()
                .map(|i| i + 1)
                .collect();
            let solvable = residual.is_empty();
            let mut text = format!("principal:\n{x}solvable: {}\n", yes_no(solvable));
            if !solvable {
                writeln!(text, "residual rows: {}", join(&residual)).ok();
            }
            Report {
                json: json!({
                    "command": "solve",
                    "principal": matrix_json(&x),
                    "solvable": solvable,
                    "residual_rows": residual,
                }),
                text,
            }
        }
        Verb::Mateq => {
            let text = read(first)?;
            let fail = |e| Failure::from_error(&ctx(&[first]), e);
            let eq = parse_equation(&text).map_err(fail)?;
            let rep = solve_matrix_equation(&eq).map_err(fail)?;
            let residual: Vec<usize> = rep.residual_rows.iter().map(|i| i + 1).collect();
            let (r, c) = rep.operator.shape();
            let mut out = format!("operator: {r}x{c}\nsolvable: {}\n", yes_no(rep.solvable));
            match &rep.solution {
                Some(x) => write!(out, "X:\n{x}").ok(),
                None => writeln!(out, "residual rows: {}", join(&residual)).ok(),
            };
            Report {
                json: json!({
                    "command": "mateq",
                    "operator_shape": [r, c],
                    "principal": matrix_json(&rep.principal),
                    "solvable": rep.solvable,
                    "solution": rep.solution.as_ref().map(matrix_json),
                    "residual_rows": residual,
                }),
                text: out,
            }
        }
        Verb::Vec => matrix_report("vec", &vec(&load_matrix(first)?)),
        Verb::Conj => matrix_report("conj", &conjugate(&load_matrix(first)?)),
    };
    Ok(if cmd.json {
        format!("{}\n", report.json)
    } else {
        report.text
    })
}

struct Report {
    json: Value,
    text: String,
}

fn matrix_report(name: &str, m: &TropMatrix) -> Report {
    Report {
        json: json!({ "command": name, "matrix": matrix_json(m) }),
        text: m.to_string(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn scalars_json(values: &[TropScalar]) -> Value {
    Value::from(values.iter().map(ToString::to_string).collect::<Vec<_>>())
}

/// A matrix as a JSON array of rows of scalar tokens.
pub fn matrix_json(m: &TropMatrix) -> Value {
    Value::from(
        (0..m.rows())
            .map(|i| scalars_json(m.row(i)))
            .collect::<Vec<_>>(),
    )
}

/// Inverse of [`matrix_json`].
pub fn matrix_from_json(v: &Value) -> crate::error::Result<TropMatrix> {
    let bad = || Error::parse(1, 1, "expected an array of rows of scalar tokens");
    let rows = v.as_array().ok_or_else(bad)?;
    let rows = rows
        .iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(bad)?
                .iter()
                .map(|tok| {
                    tok.as_str()
                        .ok_or_else(bad)?
                        .parse::<TropScalar>()
                        .map_err(|msg| Error::parse(1, 1, msg))
                })
                .collect()
        })
        .collect::<crate::error::Result<Vec<Vec<TropScalar>>>>()?;
    TropMatrix::from_rows(rows)
}

/// Inverse of the scalar token encoding used in JSON output.
pub fn scalar_from_json(v: &Value) -> crate::error::Result<TropScalar> {
    v.as_str()
        .ok_or_else(|| Error::parse(1, 1, "expected a scalar token string"))?
        .parse()
        .map_err(|msg| Error::parse(1, 1, msg))
}
