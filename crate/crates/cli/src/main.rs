use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use lbcolor::codec::{coloring_to_value, parse_coloring, read_document, write_document};
use lbcolor::generators::SourceProblem;
use lbcolor::{
    classify_instance, run_solver, solve_auto, validate_coloring, Error, Objective, SolveOptions,
    SolverKind,
};

#[derive(Parser)]
#[command(
    name = "lbcolor",
    version,
    about = "Weighted locally bounded list coloring"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the outcome as JSON.
    Solve {
        #[arg(long)]
        input: PathBuf,
        /// `auto` or one of the named solvers.
        #[arg(long, default_value = "auto")]
        solver: String,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Decide)]
        objective: ObjectiveArg,
        /// Let the split singular-color solver match clique vertices against lists and weights.
        #[arg(long)]
        clique_general: bool,
        /// Tie-breaking seed. All solvers are deterministic, so this has no effect.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build an instance from a source problem.
    Generate {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        variant: Option<String>,
    },
    /// Check a coloring against an instance.
    Check {
        #[arg(long)]
        input: PathBuf,
        /// Coloring document, or the output of `solve`.
        #[arg(long)]
        coloring: PathBuf,
    },
    /// Print the structural class of an instance's graph.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Decide,
    Maximize,
    Minimize,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Objective {
        match o {
            ObjectiveArg::Decide => Objective::Decide,
            ObjectiveArg::Maximize => Objective::Maximize,
            ObjectiveArg::Minimize => Objective::Minimize,
        }
    }
}

#[derive(Serialize)]
struct SolveReport {
    status: &'static str,
    witness: Option<Value>,
    objective: Option<i64>,
    solver_used: &'static str,
    elapsed_ms: u64,
}

fn fail(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(2)
}

fn solve(input: PathBuf, solver: &str, objective: Objective, clique_general: bool) -> ExitCode {
    let start = Instant::now();
    let doc = match read_document(&input) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let opts = SolveOptions {
        decomposition: doc.decomposition.as_ref(),
        clique_general,
    };
    let result = if solver == "auto" {
        solve_auto(&doc.instance, objective, opts)
    } else {
        solver.parse::<SolverKind>().and_then(|kind| {
            run_solver(kind, &doc.instance, objective, opts).map(|out| (kind, out))
        })
    };
    let (kind, out) = match result {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let report = SolveReport {
        status: out.status.as_str(),
        witness: out.witness.as_ref().map(coloring_to_value),
        objective: out.objective,
        solver_used: kind.name(),
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    println!(
        "{}",
        serde_json::to_string(&report).expect("reports serialize")
    );
    if out.is_feasible() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn generate(source: PathBuf, variant: Option<&str>) -> ExitCode {
    let text = match std::fs::read_to_string(&source) {
        Ok(t) => t,
        Err(e) => return fail(format!("cannot read {}: {e}", source.display())),
    };
    match SourceProblem::parse(&text).and_then(|src| src.generate_document(variant, None)) {
        Ok(doc) => {
            println!("{}", write_document(&doc));
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn read_coloring_arg(path: &PathBuf) -> Result<lbcolor::Coloring, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Malformed(e.to_string()))?;
    match value.get("witness") {
        Some(Value::Null) => Err(Error::Structural(
            "the solve output carries no witness".into(),
        )),
        Some(w) => parse_coloring(&serde_json::json!({ "color_of": w }).to_string()),
        None => parse_coloring(&text),
    }
}

fn check(input: PathBuf, coloring: PathBuf) -> ExitCode {
    let doc = match read_document(&input) {
        Ok(d) => d,
        Err(e) => return fail(e),
    };
    let col = match read_coloring_arg(&coloring) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    match validate_coloring(&doc.instance, &col) {
        Ok(report) if report.is_ok() => ExitCode::SUCCESS,
        Ok(report) => {
            if let Some(v) = &report.violation {
                eprintln!("{v}");
            }
            ExitCode::from(1)
        }
        Err(e) => fail(e),
    }
}

fn classify(input: PathBuf) -> ExitCode {
    match read_document(&input) {
        Ok(doc) => {
            let report = classify_instance(&doc.instance);
            println!(
                "{}",
                serde_json::to_string(&report).expect("reports serialize")
            );
            ExitCode::SUCCESS
        }
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            input,
            solver,
            objective,
            clique_general,
            seed: _,
        } => solve(input, &solver, objective.into(), clique_general),
        Command::Generate { source, variant } => generate(source, variant.as_deref()),
        Command::Check { input, coloring } => check(input, coloring),
        Command::Classify { input } => classify(input),
    }
}
