use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qpp_cli::{
    cmd_bounds, cmd_check, cmd_dmin, cmd_inverse, cmd_lte_table, cmd_regress, cmd_search, render, DminArgs,
    DminMethod, Outcome, Report, SearchArgs,
};
use qpp_core::bounds::{BoundOptions, InverseClass};
use qpp_core::dataset::{raw_table, TABLE_VERSION};
use qpp_core::TerminationMode;

const USAGE_EXIT: u8 = 2;

#[derive(Parser)]
#[command(name = "qpp", version, about = "QPP interleavers for turbo codes: algebra, bounds and minimum distance")]
struct Cli {
    /// Emit the full report as JSON.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Emit a CSV table.
    #[arg(long, global = true)]
    csv: bool,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolyArgs {
    /// Interleaver length.
    n: u64,
    f1: u64,
    f2: u64,
}

#[derive(Args)]
struct Budget {
    /// Search node budget.
    #[arg(long = "budget", env = "QPP_BUDGET_NODES")]
    nodes: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Dual,
    Tailbiting,
}

impl From<Mode> for TerminationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Dual => TerminationMode::Dual,
            Mode::Tailbiting => TerminationMode::Tailbiting,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Validity, irreducibility, inverse degree and quasi-cyclic period of f1*x + f2*x^2.
    Check(PolyArgs),
    /// A least-degree inverse polynomial, optionally verifying a given one.
    Inverse {
        #[command(flatten)]
        poly: PolyArgs,
        /// Coefficients g1,g2,... of a claimed inverse.
        #[arg(long, value_delimiter = ',')]
        verify: Option<Vec<u64>>,
    },
    /// Upper bounds on the minimum distance of any QPP interleaver of length N.
    Bounds {
        n: u64,
        #[arg(long, default_value_t = 3)]
        nu: u32,
        /// any, quadratic, cubic or degree-k.
        #[arg(long, default_value = "any")]
        class: InverseClass,
        /// Use the ceiling form `n2 <= ceil(3l/2) + 4` of the theorem-5 condition.
        #[arg(long)]
        theorem5_ceil: bool,
        #[arg(long)]
        no_theorem6: bool,
    },
    /// Minimum distance and multiplicity of one turbo code.
    Dmin {
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, value_enum, default_value = "dual")]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        nu: u32,
        /// Largest weight searched for.
        #[arg(long, default_value_t = 60)]
        cap: u32,
        /// Fast upper bound instead of the exhaustive search.
        #[arg(long)]
        estimate: bool,
        #[arg(long, default_value_t = 8)]
        witnesses: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Rank every QPP of length N by minimum distance.
    Search {
        n: u64,
        #[arg(long, default_value = "any")]
        class: InverseClass,
        /// Also enumerate QPPs equivalent to linear polynomials.
        #[arg(long)]
        include_reducible: bool,
        #[arg(long, default_value_t = 3)]
        nu: u32,
        #[arg(long, default_value_t = 60)]
        cap: u32,
        /// Exact evaluations at most.
        #[arg(long)]
        max_exact: Option<usize>,
        /// Rows shown in the table output.
        #[arg(long, default_value_t = 20)]
        top: usize,
        #[command(flatten)]
        budget: Budget,
    },
    /// Recompute embedded table rows and compare.
    Regress {
        #[arg(long, default_value_t = 0)]
        min_n: u64,
        #[arg(long, default_value_t = 128)]
        max_n: u64,
        /// Longer rows use the estimator and are compared on distance only.
        #[arg(long, default_value_t = 128)]
        exact_max_n: u64,
        #[arg(long, default_value_t = 60)]
        cap: u32,
        #[command(flatten)]
        budget: Budget,
    },
    /// The embedded table of LTE interleavers.
    LteTable {
        /// Print the versioned text file verbatim.
        #[arg(long)]
        dump: bool,
    },
}

fn run(command: Command) -> qpp_core::Result<(Outcome, usize)> {
    let mut top = usize::MAX;
    let outcome = match command {
        Command::Check(p) => Outcome::Check(cmd_check(p.n, p.f1, p.f2)?),
        Command::Inverse { poly, verify } => Outcome::Inverse(cmd_inverse(poly.n, poly.f1, poly.f2, verify.as_deref())?),
        Command::Bounds {
            n,
            nu,
            class,
            theorem5_ceil,
            no_theorem6,
        } => {
            let options = BoundOptions {
                theorem6: !no_theorem6,
                theorem5_ceil,
            };
            Outcome::Bounds(cmd_bounds(n, nu, class, &options)?)
        }
        Command::Dmin {
            poly,
            mode,
            nu,
            cap,
            estimate,
            witnesses,
            budget,
        } => Outcome::Dmin(cmd_dmin(&DminArgs {
            n: poly.n,
            f1: poly.f1,
            f2: poly.f2,
            nu,
            mode: mode.into(),
            method: if estimate { DminMethod::Estimate } else { DminMethod::Exact },
            weight_cap: cap,
            budget_nodes: budget.nodes,
            max_witnesses: witnesses,
        })?),
        Command::Search {
            n,
            class,
            include_reducible,
            nu,
            cap,
            max_exact,
            top: t,
            budget,
        } => {
            top = t;
            Outcome::Search(cmd_search(&SearchArgs {
                n,
                nu,
                include_reducible,
                class,
                weight_cap: cap,
                budget_nodes: budget.nodes,
                max_exact,
            })?)
        }
        Command::Regress {
            min_n,
            max_n,
            exact_max_n,
            cap,
            budget,
        } => Outcome::Regress(cmd_regress(min_n, max_n, exact_max_n, cap, budget.nodes)?),
        Command::LteTable { .. } => Outcome::LteTable(cmd_lte_table()?),
    };
    Ok((outcome, top))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    }
    if let Command::LteTable { dump: true } = cli.command {
        print!("{}", raw_table());
        return ExitCode::SUCCESS;
    }

    let started = Instant::now();
    let (result, top) = match run(cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE_EXIT);
        }
    };
    let report = Report {
        command: std::env::args().skip(1).collect(),
        dataset_version: TABLE_VERSION,
        result,
        timing_ms: Some(started.elapsed().as_millis() as u64),
    };

    if cli.json {
        match serde_json::to_string_pretty(&report) {
            Ok(s) => println!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    } else if cli.csv {
        match render::csv(&report) {
            Ok(s) => print!("{s}"),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::FAILURE;
            }
        }
    } else {
        print!("{}", render::human(&report, top));
    }
    ExitCode::from(report.result.status().exit_code() as u8)
}
