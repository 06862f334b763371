use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use alexq::{
    cmd_check_moves, cmd_colorings, cmd_decompose, cmd_distinguish, cmd_ideals, cmd_invariants,
    cmd_matrix, cmd_orbits, cmd_parse, cmd_quandle, cmd_reduced, cmd_simplify, cmd_word,
    load_battery, load_diagram, parse_assignments, to_stdout_json, CliError,
};

/// Multivariate Alexander module and quandle invariants of links.
#[derive(Parser)]
#[command(name = "alexq", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a diagram file and emit its normalized form.
    Parse { file: PathBuf },
    /// Emit the crossing-relation presentation of the module.
    Matrix { file: PathBuf },
    /// Emit the simplified presentation with its basis trace.
    Simplify { file: PathBuf },
    /// Emit the free-plus-cyclic decomposition, when reachable.
    Decompose { file: PathBuf },
    /// Emit generators of the k-th elementary ideal.
    Ideals {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Emit the simplified single-variable presentation (all t_i = t).
    Reduced { file: PathBuf },
    /// Generate the arc-class quandle of a specialization.
    Quandle {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Comma-separated nonzero assignments, e.g. t1=2,t2=3.
        #[arg(long)]
        assign: String,
    },
    /// Evaluate a quandle word such as "(a2 > a1)" in the free module.
    Word {
        file: PathBuf,
        #[arg(long)]
        expr: String,
    },
    /// Orbit partition of the generated quandle.
    Orbits {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        assign: String,
    },
    /// Count arc colorings over a prime field (reported as an exponent).
    Colorings {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        assign: String,
    },
    /// Compare two diagrams through the specialization battery.
    Distinguish {
        a: PathBuf,
        b: PathBuf,
        /// JSON battery config: {"primes": [...], "tuples_per_prime": n, "seed": s}.
        #[arg(long)]
        battery: Option<PathBuf>,
    },
    /// Fuzz move invariance: random move sequences must preserve every
    /// battery observable.
    CheckMoves {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 25)]
        iterations: usize,
        #[arg(long, default_value_t = 8)]
        max_length: usize,
        #[arg(long)]
        battery: Option<PathBuf>,
    },
    /// Full invariant report for a diagram.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        battery: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(String, bool), CliError> {
    match cli.command {
        Command::Parse { file } => Ok((to_stdout_json(&cmd_parse(&load_diagram(&file)?)), true)),
        Command::Matrix { file } => Ok((to_stdout_json(&cmd_matrix(&load_diagram(&file)?)), true)),
        Command::Simplify { file } => {
            Ok((to_stdout_json(&cmd_simplify(&load_diagram(&file)?)), true))
        }
        Command::Decompose { file } => {
            Ok((to_stdout_json(&cmd_decompose(&load_diagram(&file)?)), true))
        }
        Command::Ideals { file, k } => {
            Ok((to_stdout_json(&cmd_ideals(&load_diagram(&file)?, k)?), true))
        }
        Command::Reduced { file } => {
            Ok((to_stdout_json(&cmd_reduced(&load_diagram(&file)?)), true))
        }
        Command::Quandle { file, prime, assign } => {
            let d = load_diagram(&file)?;
            let u = parse_assignments(&assign, d.num_components())?;
            Ok((to_stdout_json(&cmd_quandle(&d, prime, &u)?), true))
        }
        Command::Word { file, expr } => {
            let d = load_diagram(&file)?;
            Ok((to_stdout_json(&cmd_word(&d, &expr)?), true))
        }
        Command::Orbits { file, prime, assign } => {
            let d = load_diagram(&file)?;
            let u = parse_assignments(&assign, d.num_components())?;
            Ok((to_stdout_json(&cmd_orbits(&d, prime, &u)?), true))
        }
        Command::Colorings { file, prime, assign } => {
            let d = load_diagram(&file)?;
            let u = parse_assignments(&assign, d.num_components())?;
            Ok((to_stdout_json(&cmd_colorings(&d, prime, &u)?), true))
        }
        Command::Distinguish { a, b, battery } => {
            let da = load_diagram(&a)?;
            let db = load_diagram(&b)?;
            let config = load_battery(battery.as_deref())?;
            Ok((to_stdout_json(&cmd_distinguish(&da, &db, &config)?), true))
        }
        Command::CheckMoves {
            file,
            seed,
            iterations,
            max_length,
            battery,
        } => {
            let d = load_diagram(&file)?;
            let config = load_battery(battery.as_deref())?;
            let out = cmd_check_moves(&d, seed, iterations, max_length, &config)?;
            let ok = out.ok;
            Ok((to_stdout_json(&out), ok))
        }
        Command::Invariants { file, battery } => {
            let d = load_diagram(&file)?;
            let config = load_battery(battery.as_deref())?;
            Ok((to_stdout_json(&cmd_invariants(&d, &config)?), true))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            println!("{}", CliError::usage(e.to_string()).to_json());
            eprintln!("{e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            // --help and --version land here
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok((json, ok)) => {
            print!("{json}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            println!("{}", e.to_json());
            eprintln!("error: {e}");
            ExitCode::from(e.kind.exit_code() as u8)
        }
    }
}
