//! `cliffq` experiment runner.
//!
//! Exit status: 0 when every checked invariant holds, 1 when one fails
//! (a `FAIL <invariant> ...` line is printed to stderr), 2 for an unknown
//! command or flag, 3 for an invalid config file or parameter value.

mod commands;
mod config;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use commands::{CliError, Context, Outcome};
use config::Settings;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CONFIG: u8 = 3;

#[derive(Parser)]
#[command(
    name = "cliffq",
    version,
    about = "Clifford-algebra quantum network verification runner"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// `key = value` config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Hermitian blade basis: hermiticity, involution, Gram rank, Clifford relations
    VerifyBasis {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
    },
    /// Non-commuting pair count, parity rule against dense brute force
    OmegaCount {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
    },
    /// Generalized QFT unitarity and column factorization over a grid
    VerifyGqft {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GqftGrid,
    },
    /// Generalized QFT distance to the standard QFT against the analytic bound
    GqftDistance {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        grid: GqftGrid,
    },
    /// First-order product-formula error and bounds over a range of step counts
    TrotterSweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
        /// `coeff@blade;...`, blade indices joined by `.`
        #[arg(long)]
        terms: Option<String>,
        #[arg(long)]
        num_terms: Option<String>,
        #[arg(long)]
        t: Option<String>,
        #[arg(long)]
        r_min: Option<String>,
        #[arg(long)]
        r_max: Option<String>,
    },
    /// Swap-test circuit against the ancilla formula, plus shot sampling
    SwapTest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        shots: Option<String>,
        #[arg(long)]
        pairs: Option<String>,
    },
    /// Fidelity gradient ascent for a single perceptron sample
    TrainCqp {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        flavor: Option<String>,
        #[arg(long)]
        blades: Option<String>,
        #[arg(long)]
        output_blade: Option<String>,
        #[arg(long)]
        activation: Option<String>,
        #[arg(long)]
        readout: Option<String>,
        #[arg(long)]
        eta: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        init: Option<String>,
        #[arg(long)]
        iterations: Option<String>,
        #[arg(long)]
        fd_step: Option<String>,
    },
    /// Perceptron invariance under joint unitaries on input and weight states
    Equivalence {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        trials: Option<String>,
        #[arg(long)]
        activation: Option<String>,
        #[arg(long)]
        readout: Option<String>,
    },
    /// Two-level decomposition and controlled-gate netlist
    Decompose {
        #[command(flatten)]
        common: Common,
        /// `entangler` or `random`
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        theta1: Option<String>,
        #[arg(long)]
        theta2: Option<String>,
        #[arg(long)]
        dim: Option<String>,
    },
}

#[derive(Args, Clone, Default)]
struct GqftGrid {
    /// Comma-separated qubit counts
    #[arg(long)]
    n: Option<String>,
    /// Comma-separated angles
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    axis_sets: Option<String>,
    /// `independent` or `shared`
    #[arg(long)]
    axes: Option<String>,
}

type Runner = fn(&Context, &Settings) -> Result<Outcome, CliError>;

struct Plan {
    name: &'static str,
    schema: &'static [(&'static str, &'static str)],
    overrides: Vec<(&'static str, Option<String>)>,
    common: Common,
    run: Runner,
}

impl Command {
    fn plan(self) -> Plan {
        use commands as c;
        let (name, schema, overrides, common, run): (_, _, _, _, Runner) = match self {
            Command::VerifyBasis { common, n } => (
                "verify-basis",
                c::VERIFY_BASIS,
                vec![("n", n)],
                common,
                c::verify_basis,
            ),
            Command::OmegaCount { common, n } => (
                "omega-count",
                c::OMEGA_COUNT,
                vec![("n", n)],
                common,
                c::omega_count_cmd,
            ),
            Command::VerifyGqft { common, grid } => (
                "verify-gqft",
                c::GQFT_GRID,
                grid.overrides(),
                common,
                c::verify_gqft,
            ),
            Command::GqftDistance { common, grid } => (
                "gqft-distance",
                c::GQFT_GRID,
                grid.overrides(),
                common,
                c::gqft_distance,
            ),
            Command::TrotterSweep {
                common,
                n,
                terms,
                num_terms,
                t,
                r_min,
                r_max,
            } => (
                "trotter-sweep",
                c::TROTTER_SWEEP,
                vec![
                    ("n", n),
                    ("terms", terms),
                    ("num_terms", num_terms),
                    ("t", t),
                    ("r_min", r_min),
                    ("r_max", r_max),
                ],
                common,
                c::trotter_sweep,
            ),
            Command::SwapTest {
                common,
                n,
                shots,
                pairs,
            } => (
                "swap-test",
                c::SWAP_TEST,
                vec![("n", n), ("shots", shots), ("pairs", pairs)],
                common,
                c::swap_test,
            ),
            Command::TrainCqp {
                common,
                n,
                flavor,
                blades,
                output_blade,
                activation,
                readout,
                eta,
                beta,
                input,
                init,
                iterations,
                fd_step,
            } => (
                "train-cqp",
                c::TRAIN_CQP,
                vec![
                    ("n", n),
                    ("flavor", flavor),
                    ("blades", blades),
                    ("output_blade", output_blade),
                    ("activation", activation),
                    ("readout", readout),
                    ("eta", eta),
                    ("beta", beta),
                    ("input", input),
                    ("init", init),
                    ("iterations", iterations),
                    ("fd_step", fd_step),
                ],
                common,
                c::train_cqp,
            ),
            Command::Equivalence {
                common,
                n,
                trials,
                activation,
                readout,
            } => (
                "equivalence",
                c::EQUIVALENCE,
                vec![
                    ("n", n),
                    ("trials", trials),
                    ("activation", activation),
                    ("readout", readout),
                ],
                common,
                c::equivalence,
            ),
            Command::Decompose {
                common,
                source,
                theta1,
                theta2,
                dim,
            } => (
                "decompose",
                c::DECOMPOSE,
                vec![
                    ("source", source),
                    ("theta1", theta1),
                    ("theta2", theta2),
                    ("dim", dim),
                ],
                common,
                c::decompose,
            ),
        };
        Plan {
            name,
            schema,
            overrides,
            common,
            run,
        }
    }
}

impl GqftGrid {
    fn overrides(self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("n", self.n),
            ("theta", self.theta),
            ("axis_sets", self.axis_sets),
            ("axes", self.axes),
        ]
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::ValueValidation | ErrorKind::InvalidValue => EXIT_CONFIG,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let plan = cli.command.plan();
    let mut overrides = plan.overrides;
    overrides.push(("seed", plan.common.seed.map(|s| s.to_string())));

    let settings = match Settings::resolve(plan.schema, plan.common.config.as_deref(), &overrides) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let ctx = Context {
        command: plan.name,
        args: std::env::args().collect::<Vec<_>>().join(" "),
    };
    let outcome = match (plan.run)(&ctx, &settings) {
        Ok(o) => o,
        Err(CliError::Config(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
        Err(CliError::Library(e)) => {
            eprintln!("FAIL computation {e}");
            return ExitCode::from(EXIT_FAIL);
        }
    };

    match &plan.common.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_CONFIG);
            }
            for line in &outcome.summary {
                println!("{line}");
            }
        }
        None => {
            print!("{}", outcome.output);
            for line in &outcome.summary {
                eprintln!("{line}");
            }
        }
    }
    for failure in &outcome.failures {
        eprintln!("FAIL {failure}");
    }
    if outcome.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}
