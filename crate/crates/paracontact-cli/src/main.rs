//! Command-line front end: parse model files, run the pipeline
//! (validate -> connect -> fundamental tensor -> classify -> Nijenhuis ->
//! predicates), emit human- or machine-readable reports, and run the built-in
//! verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 validation failure,
//! 3 parse error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use paracontact::verify::{run_all, VerifyConfig};
use paracontact::{standard_structure, subspace_dim_formula, subspace_dims_numeric};
use serde::Serialize;

use paracontact_cli::model::{LoadError, ModelFile};
use paracontact_cli::report::{build_report, render_text};

const EXIT_VERIFY_FAIL: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_PARSE: u8 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "paracontact",
    version,
    about = "Pointwise analysis of almost paracontact almost paracomplex Riemannian structures"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the full pipeline on a JSON model file and print a report
    Classify {
        /// Path to the model file (see README for the schema)
        path: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Include the full component arrays of both Nijenhuis families
        #[arg(long)]
        full_tensors: bool,
        /// Override the relative membership threshold (default 1e-9)
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Build one member of the Lie-group example family and run the pipeline
    Example {
        /// Paracontact rank n (frame dimension is 2n + 1)
        #[arg(long)]
        n: usize,
        /// The 2n parameters a_1..a_2n, comma separated
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        a: Vec<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        full_tensors: bool,
        #[arg(long)]
        tol: Option<f64>,
        /// Print the equivalent JSON model file instead of running
        #[arg(long)]
        emit_model: bool,
    },
    /// Compare the closed-form subspace dimensions with the numerical rank oracle
    Dims {
        /// Paracontact rank n
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the built-in verification suites
    Verify {
        /// Random draws per suite and dimension
        #[arg(long, default_value_t = 25)]
        seeds: u64,
        /// Frame dimensions to exercise, comma separated (odd, >= 3)
        #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 5])]
        dims: Vec<usize>,
        /// Residual threshold for a case to pass
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Classify {
            path,
            format,
            full_tensors,
            tol,
        } => {
            let text = match std::fs::read_to_string(&path) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("parse error: cannot read {}: {e}", path.display());
                    return ExitCode::from(EXIT_PARSE);
                }
            };
            let file: ModelFile = match serde_json::from_str(&text) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("parse error in {}: {e}", path.display());
                    return ExitCode::from(EXIT_PARSE);
                }
            };
            run_pipeline(&file, format, full_tensors, tol)
        }
        Cmd::Example {
            n,
            a,
            format,
            full_tensors,
            tol,
            emit_model,
        } => {
            let file = ModelFile::Example { n, a };
            if emit_model {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&file).expect("serializable")
                );
                return ExitCode::SUCCESS;
            }
            run_pipeline(&file, format, full_tensors, tol)
        }
        Cmd::Dims { n, format } => cmd_dims(n, format),
        Cmd::Verify {
            seeds,
            dims,
            tol,
            format,
        } => cmd_verify(seeds, dims, tol, format),
    }
}

fn run_pipeline(
    file: &ModelFile,
    format: Format,
    full_tensors: bool,
    tol: Option<f64>,
) -> ExitCode {
    let loaded = match file.load() {
        Ok(m) => m,
        Err(e @ LoadError::Shape(_)) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_PARSE);
        }
        Err(e @ LoadError::Validation { .. }) => {
            eprintln!("{e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let report = match build_report(&loaded, full_tensors, tol) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("validation failure: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("report is serializable")
        ),
        Format::Text => print!("{}", render_text(&report)),
    }
    ExitCode::SUCCESS
}

#[derive(Serialize)]
struct DimsRow {
    class: String,
    formula: usize,
    numeric: usize,
    pass: bool,
}

#[derive(Serialize)]
struct DimsReport {
    n: usize,
    rows: Vec<DimsRow>,
    total_formula: usize,
    total_numeric: usize,
    full_space_rank: usize,
    pass: bool,
}

fn cmd_dims(n: usize, format: Format) -> ExitCode {
    let s = match standard_structure(n) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("parse error: {e}");
            return ExitCode::from(EXIT_PARSE);
        }
    };
    let (numeric, full) = match subspace_dims_numeric(&s) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("validation failure: {e}");
            return ExitCode::from(EXIT_VALIDATION);
        }
    };
    let mut rows = Vec::new();
    let mut total_formula = 0;
    let mut total_numeric = 0;
    for class in 1..=11usize {
        let formula = subspace_dim_formula(n, class).expect("class in range");
        let num = numeric[class - 1];
        total_formula += formula;
        total_numeric += num;
        rows.push(DimsRow {
            class: format!("F{class}"),
            formula,
            numeric: num,
            pass: formula == num,
        });
    }
    let pass = rows.iter().all(|r| r.pass) && full == total_formula;
    let report = DimsReport {
        n,
        rows,
        total_formula,
        total_numeric,
        full_space_rank: full,
        pass,
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        ),
        Format::Text => {
            println!(
                "subspace dimensions at n = {n} (frame dimension {})",
                2 * n + 1
            );
            println!("class   formula  numeric  status");
            for r in &report.rows {
                println!(
                    "{:<6} {:>8} {:>8}  {}",
                    r.class,
                    r.formula,
                    r.numeric,
                    if r.pass { "PASS" } else { "FAIL" }
                );
            }
            println!(
                "{:<6} {:>8} {:>8}  {}",
                "total",
                report.total_formula,
                report.total_numeric,
                if report.total_formula == report.total_numeric {
                    "PASS"
                } else {
                    "FAIL"
                }
            );
            println!(
                "full admissible-space rank: {} ({})",
                report.full_space_rank,
                if report.full_space_rank == report.total_formula {
                    "PASS"
                } else {
                    "FAIL"
                }
            );
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAIL)
    }
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    seeds: u64,
    dims: &'a [usize],
    tol: f64,
    suites: Vec<SuiteRow>,
    pass: bool,
}

#[derive(Serialize)]
struct SuiteRow {
    name: String,
    cases: usize,
    failures: usize,
    worst_residual: f64,
    notes: Vec<String>,
}

fn cmd_verify(seeds: u64, dims: Vec<usize>, tol: f64, format: Format) -> ExitCode {
    if dims.is_empty() || dims.iter().any(|d| *d < 3 || d % 2 == 0) {
        eprintln!("parse error: --dims must list odd dimensions >= 3");
        return ExitCode::from(EXIT_PARSE);
    }
    let cfg = VerifyConfig {
        seeds: seeds.max(1),
        dims: dims.clone(),
        tol,
    };
    let outcomes = run_all(&cfg);
    let pass = outcomes.iter().all(|o| o.passed());
    match format {
        Format::Json => {
            let report = VerifyReport {
                seeds: cfg.seeds,
                dims: &dims,
                tol,
                suites: outcomes
                    .iter()
                    .map(|o| SuiteRow {
                        name: o.name.to_string(),
                        cases: o.cases,
                        failures: o.failures,
                        worst_residual: o.worst_residual,
                        notes: o.notes.clone(),
                    })
                    .collect(),
                pass,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("serializable")
            );
        }
        Format::Text => {
            println!(
                "verification suites (seeds {}, dims {:?}, tol {:.1e})",
                cfg.seeds, dims, tol
            );
            for o in &outcomes {
                println!(
                    "  {:<26} {:>6} cases  {:>4} failures  worst {:.3e}  {}",
                    o.name,
                    o.cases,
                    o.failures,
                    o.worst_residual,
                    if o.passed() { "PASS" } else { "FAIL" }
                );
                for n in &o.notes {
                    println!("      {n}");
                }
            }
            println!("overall: {}", if pass { "PASS" } else { "FAIL" });
        }
    }
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY_FAIL)
    }
}
