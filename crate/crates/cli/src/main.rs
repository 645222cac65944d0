//! `commdiff`: batch front end for commuting difference operators.
//!
//! Exit codes: 0 verified, 1 verification failed, 2 input error, 3 no
//! solution within bounds.

mod commands;
mod input;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use commdiff::rings::Rational;

use commands::{CommutantArgs, FamilyArgs};
use report::{Failure, Report};

#[derive(Parser)]
#[command(name = "commdiff", version, about = "Commuting difference operators and their spectral curves")]
struct Cli {
    /// Relative tolerance for floating-point inputs (exact inputs ignore it).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    /// Print only the primary artifact instead of the full run report.
    #[arg(long, global = true)]
    raw: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    W1,
    A1,
}

fn window(v: &[i64]) -> Result<Option<(i64, i64)>, Failure> {
    match v {
        [] => Ok(None),
        [lo, hi] if lo <= hi => Ok(Some((*lo, *hi))),
        _ => Err(Failure::Input("--window expects lo,hi with lo <= hi".into())),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check whether two operators commute; reports the leading term of the
    /// commutator otherwise.
    Verify {
        /// Operator JSON file (`-` for stdin).
        a: String,
        b: String,
    },
    /// Solve [L, X] = 0 for X of a given order within a bounded ansatz.
    Commutant {
        file: String,
        #[arg(long)]
        order: usize,
        /// Coefficient degree bound; omitted means a default with escalation.
        #[arg(long)]
        degree_bound: Option<usize>,
        /// Frequency bound for exponential coefficients.
        #[arg(long, allow_negative_numbers = true)]
        frequency_bound: Option<i64>,
        /// Return one operator with leading coefficient 1 instead of a basis.
        #[arg(long)]
        monic: bool,
        #[arg(long, default_value_t = 20_000)]
        max_unknowns: usize,
        /// Index window for sequence coefficients (default: their span).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        window: Vec<i64>,
    },
    /// Spectral curve w² = F(z) of a commuting pair (L₂, L_odd).
    Curve { l2: String, lodd: String },
    /// Build the second-order operator of a family.
    Family {
        /// One of elliptic, trig, poly, poly-a1.
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value = "1")]
        r1: Rational,
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        alpha0: Rational,
        #[arg(long, default_value = "0", allow_negative_numbers = true)]
        alpha1: Rational,
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        alpha2: Rational,
        /// c0,c1,c2 of F(z) = z³ + c2 z² + c1 z + c0 (elliptic).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        curve: Option<Vec<Rational>>,
        /// JSON file with "gamma" and "sqrtF" lists (elliptic).
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        window: Vec<i64>,
    },
    /// Check the chain identities and the factorization of L₂ − z across
    /// the window.
    Chain {
        file: String,
        /// JSON list of {"z", "w"} points on the curve.
        #[arg(long)]
        points: Option<String>,
    },
    /// Map a W1 operator into the Weyl algebra.
    WeylMap {
        file: String,
        /// JSON {"a", "b"} differential operators or {"generators": [...]}.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Apply a composite of automorphism generators.
    Automorph {
        file: String,
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Generator list as inline JSON or a file path.
        #[arg(long)]
        generators: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Commutant { .. } => "commutant",
            Command::Curve { .. } => "curve",
            Command::Family { .. } => "family",
            Command::Chain { .. } => "chain",
            Command::WeylMap { .. } => "weyl-map",
            Command::Automorph { .. } => "automorph",
        }
    }
}

fn dispatch(cmd: Command, tol: f64, rep: &mut Report) -> Result<(), Failure> {
    match cmd {
        Command::Verify { a, b } => commands::verify(&a, &b, tol, rep),
        Command::Commutant { file, order, degree_bound, frequency_bound, monic, max_unknowns, window: w } => {
            let args = CommutantArgs { order, degree_bound, frequency_bound, monic, max_unknowns, window: window(&w)? };
            commands::commutant(&file, &args, tol, rep)
        }
        Command::Curve { l2, lodd } => commands::curve(&l2, &lodd, rep),
        Command::Family { family, g, r1, alpha0, alpha1, alpha2, curve, gamma, window: w } => {
            let args = FamilyArgs { family, genus: g, r1, alpha0, alpha1, alpha2, curve, gamma, window: window(&w)? };
            commands::family(&args, rep)
        }
        Command::Chain { file, points } => commands::chain(&file, points.as_deref(), tol, rep),
        Command::WeylMap { file, pair } => commands::weyl_map(&file, pair.as_deref(), rep),
        Command::Automorph { file, algebra, generators } => {
            let algebra = match algebra {
                Algebra::W1 => "w1",
                Algebra::A1 => "a1",
            };
            commands::automorph(&file, algebra, &generators, rep)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let mut rep = Report::new(cli.command.name());
    match dispatch(cli.command, cli.tolerance, &mut rep) {
        Ok(()) => {
            let out = if cli.raw { rep.primary_artifact() } else { rep.to_json() };
            println!("{}", serde_json::to_string_pretty(&out).expect("JSON values serialize"));
            eprintln!("{}", rep.summary());
            ExitCode::from(if rep.passed() { 0 } else { 1 })
        }
        Err(f) => {
            println!("{}", serde_json::to_string_pretty(&rep.failure_json(&f)).expect("JSON values serialize"));
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
