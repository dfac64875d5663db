mod parse;
mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use trinomial_core::grading::grading_data;
use trinomial_core::oracle::bounded_lnd_search;
use trinomial_core::poly::default_nilpotency_bound;
use trinomial_core::polyhedral::{build_divisor, check_properness};
use trinomial_core::{exec, Strategy, Trinomial};

use parse::{parse_degree, parse_instance};
use report::{Failure, ReportOptions};

const VERDICTS: &str = "Verdicts:
  rigid:    Rigid | NotRigid | OutOfTheoremScope
  cylinder: NoCylinder | HasCylinder | NotApplicable
Exit codes: 0 success, 2 parse/validation error, 3 input outside the theorems' hypotheses
(linear term or non-factorial), 4 internal inconsistency.";

/// Exact analysis of trinomial hypersurfaces T0^l0 + T1^l1 + T2^l2 = 0.
#[derive(Parser, Debug)]
#[command(name = "trinomial", version, after_help = VERDICTS)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Instance file (JSON {"l0":[..],"l1":[..],"l2":[..]} or compact "2,3;2;3"); "-" or absent reads stdin.
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Iteration bound for nilpotency checks [default: 2 + largest exponent].
    #[arg(long, global = true)]
    nilpotency_bound: Option<usize>,

    /// Worker threads for the oracles; outputs do not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Factoriality, homogeneity, rigidity and cylinder verdicts.
    Check,
    /// The matrix L, kernel basis B, section S, variable degrees and deg f.
    Grading,
    /// Polyhedral divisor with vertex integrality and properness checks.
    Divisor,
    /// Evaluate the divisor at a degree and compare dimensions with the oracle.
    EvalM {
        /// Degree as comma-separated integers, e.g. "6,0".
        #[arg(long, allow_hyphen_values = true)]
        m: String,
    },
    /// Explicit locally nilpotent derivations for exponents equal to 1.
    Derivation,
    /// Bounded search for homogeneous derivations preserving (f).
    SearchLnd {
        #[arg(long, default_value_t = 3)]
        max_degree: u32,
    },
    /// Everything above, plus a grid cross-check.
    Report,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))?;
        }
        _ => {
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Invalid(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

/// Returns the output document and whether every internal check agreed.
fn run(cli: &Cli, t: &Trinomial) -> Result<(Value, bool), Failure> {
    let strategy = Strategy::default();
    let bound = cli.nilpotency_bound.unwrap_or_else(|| default_nilpotency_bound(t));
    match &cli.command {
        Command::Check => Ok((report::check(t), true)),
        Command::Grading => Ok((report::grading(&grading_data(t)?), true)),
        Command::Divisor => {
            let g = grading_data(t)?;
            let d = build_divisor(t, &g)?;
            Ok((report::divisor(&d), check_properness(&d).passed()))
        }
        Command::EvalM { m } => {
            let m = parse_degree(m)?;
            let g = grading_data(t)?;
            if m.len() != g.rank() {
                return Err(Failure::Invalid(format!(
                    "degree must have {} entries, got {}",
                    g.rank(),
                    m.len()
                )));
            }
            let d = build_divisor(t, &g)?;
            Ok(report::eval_m(&g, &d, &m, strategy))
        }
        Command::Derivation => {
            let g = grading_data(t)?;
            let (derivs, ok) = report::derivations(t, &g, bound)?;
            Ok((json!({ "derivations": derivs }), ok))
        }
        Command::SearchLnd { max_degree } => {
            let g = grading_data(t)?;
            let r = bounded_lnd_search(t, &g, *max_degree, bound, strategy)?;
            Ok((report::search(&r, &t.variable_names()), true))
        }
        Command::Report => {
            let opts = ReportOptions {
                nilpotency_bound: cli.nilpotency_bound,
                evaluation_grid: 1,
                cross_check_grid: 2,
                strategy,
            };
            report::full_report(t, &opts)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = read_input(cli.input.as_ref())
        .and_then(|text| parse_instance(&text).map_err(Failure::from))
        .and_then(|t| exec::with_jobs(cli.jobs, || run(&cli, &t)));
    match outcome {
        Ok((doc, consistent)) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string(&doc).expect("JSON values serialize") + "\n",
                Format::Text => report::to_text(&doc),
            };
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(text.as_bytes());
            if consistent {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: internal inconsistency between independent computations");
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
