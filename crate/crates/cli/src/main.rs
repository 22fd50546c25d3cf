//! `worldline`: evaluate operator expressions in the localized Poincaré
//! enveloping algebra and run the symbolic/numeric verification suites.
//!
//! Exit codes: 0 when every selected record passes, 1 when any record
//! fails, 2 on usage, parse, or configuration errors. No environment
//! variables are consulted; all inputs arrive as flags.

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use worldline_algebra::{eval_str, format_element, verify_catalog, Poincare, Status};
use worldline_numlab::{run_numeric_suite, NumericRunConfig, SlopeStatus, DEFAULT_LADDER};

#[derive(Parser)]
#[command(
    name = "worldline",
    version,
    about = "Operator algebra of the relativistic world-line: exact symbolic verification and a finite-difference momentum-space laboratory."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one expression and print it (e.g. "nf(comm(X[1],X[2]))").
    Eval {
        /// Expression over P[μ], J[μ,ν], X[μ], XT[μ], a[μ], th[μ,ν], M2,
        /// Minv2, rationals, and i, with + - * ^, comm(,), and nf().
        expr: String,
        /// Spacetime dimension of the symbolic engine.
        #[arg(long, default_value_t = 4)]
        dim: u8,
    },
    /// Run the verification suites and report per-record results.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Which suite(s) to run.
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Spacetime dimension of the symbolic suite (the numeric laboratory
    /// is fixed to four dimensions).
    #[arg(long, default_value_t = 4)]
    dim: u8,
    /// Particle mass for the numeric suite.
    #[arg(long, default_value_t = 1.0)]
    mass: f64,
    /// Single grid size (odd, ≥ 9). Default: the refinement ladder
    /// 33, 65, 129 with convergence-order fitting.
    #[arg(long)]
    grid: Option<usize>,
    /// Half-extent of the momentum box.
    #[arg(long, default_value_t = 6.0)]
    pmax: f64,
    /// Overrides every numeric magnitude tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Write the JSON report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Write CSV residual tables (id,N,h,residual) here.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Escalate boundary-decay warnings to record failures.
    #[arg(long)]
    strict: bool,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Symbolic,
    Numeric,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Symbolic => "symbolic",
            Suite::Numeric => "numeric",
            Suite::All => "all",
        }
    }
}

const CONFIG_ERROR: u8 = 2;

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Eval { expr, dim } => cmd_eval(&expr, dim),
        Command::Verify(args) => cmd_verify(&args),
    }
}

fn check_dim(dim: u8) -> Result<(), String> {
    if (2..=8).contains(&dim) {
        Ok(())
    } else {
        Err(format!("dimension must be between 2 and 8, got {dim}"))
    }
}

fn cmd_eval(expr: &str, dim: u8) -> ExitCode {
    if let Err(msg) = check_dim(dim) {
        eprintln!("error: {msg}");
        return ExitCode::from(CONFIG_ERROR);
    }
    match eval_str(expr, dim, &Poincare) {
        Ok(element) => {
            println!("{}", format_element(&element));
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(CONFIG_ERROR)
        }
    }
}

fn positive_finite(value: f64, what: &str) -> Result<(), String> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(format!("{what} must be positive and finite, got {value}"))
    }
}

fn cmd_verify(args: &VerifyArgs) -> ExitCode {
    let checks = [
        check_dim(args.dim),
        positive_finite(args.mass, "mass"),
        positive_finite(args.pmax, "pmax"),
        args.tol
            .map_or(Ok(()), |t| positive_finite(t, "tolerance override")),
    ];
    for check in checks {
        if let Err(msg) = check {
            eprintln!("error: {msg}");
            return ExitCode::from(CONFIG_ERROR);
        }
    }

    let run_symbolic = matches!(args.suite, Suite::Symbolic | Suite::All);
    let run_numeric = matches!(args.suite, Suite::Numeric | Suite::All);
    let grids = match args.grid {
        Some(n) => vec![n],
        None => DEFAULT_LADDER.to_vec(),
    };

    let symbolic = if run_symbolic {
        verify_catalog(args.dim, &Poincare)
    } else {
        Vec::new()
    };
    let numeric = if run_numeric {
        match run_numeric_suite(&NumericRunConfig {
            mass: args.mass,
            pmax: args.pmax,
            grids: grids.clone(),
            tolerance_override: args.tol,
            strict: args.strict,
        }) {
            Ok(results) => results,
            Err(err) => {
                eprintln!("error: {err}");
                return ExitCode::from(CONFIG_ERROR);
            }
        }
    } else {
        Vec::new()
    };

    for rec in &symbolic {
        match rec.status {
            Status::Pass => println!("{:<32} pass  ({} ms)", rec.id, rec.ms),
            Status::Fail => {
                println!("{:<32} FAIL", rec.id);
                if let Some(witness) = &rec.witness {
                    println!("    witness: {witness}");
                }
            }
        }
    }
    for r in &numeric {
        let slope = match &r.slope {
            Some(SlopeStatus::Measured(s)) => format!("{s:.2}"),
            Some(SlopeStatus::AtFloor) => "at floor".to_string(),
            Some(SlopeStatus::Inconclusive) => "inconclusive".to_string(),
            Some(SlopeStatus::TooFewGrids) | None => "-".to_string(),
        };
        println!(
            "{:<24} residual {:>10.3e} @ N={} (tol {:.1e}, order {slope})  {}",
            r.id,
            r.magnitude,
            r.magnitude_grid,
            r.tolerance,
            if r.passed { "pass" } else { "FAIL" }
        );
        if !r.passed {
            for s in &r.samples {
                println!("    N={:<4} h={:<8.5} residual={:e}", s.n, s.h, s.residual);
            }
        }
    }
    if let Some(first) = numeric.first() {
        for w in &first.warnings {
            eprintln!("warning: {w}");
        }
    }

    let verdict = symbolic.iter().all(|r| r.status == Status::Pass)
        && numeric.iter().all(|r| r.passed);
    println!("overall: {}", if verdict { "pass" } else { "fail" });

    let echo = report::ConfigEcho {
        suite: args.suite.name().to_string(),
        dim: args.dim,
        mass: args.mass,
        grids,
        pmax: args.pmax,
        tol: args.tol,
        strict: args.strict,
    };
    let rep = report::build(echo, &symbolic, &numeric, verdict);
    if let Some(path) = &args.json {
        if let Err(err) = report::write_json(&rep, path) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    }
    if let Some(path) = &args.csv {
        if let Err(err) = report::write_csv(&numeric, path) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(CONFIG_ERROR);
        }
    }

    if verdict {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
