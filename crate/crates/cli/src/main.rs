use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use padic_welch::classical::Field;
use padic_welch_cli::{run, Command, OutputFormat, RunRequest, SearchOverrides};

#[derive(Parser)]
#[command(name = "padic-welch", version, about = "Exact p-adic Welch bound and Zauner condition checks")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Configuration (or search spec) JSON file
    #[arg(long, global = true)]
    input: Option<PathBuf>,

    /// Tensor order m
    #[arg(long, global = true, default_value_t = 1)]
    m: u32,

    /// Strong form: also require max-norm one
    #[arg(long, global = true)]
    strong: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Search height bound H
    #[arg(long, global = true)]
    height: Option<u64>,

    /// Search mode: Q1, Q2, ZAUNER, ZAUNER_STRONG, EQUIANGULAR
    #[arg(long, global = true)]
    mode: Option<String>,

    /// Maximum number of search hits
    #[arg(long, global = true)]
    limit: Option<usize>,

    /// Search worker threads (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    /// Largest number of configurations a search may visit
    #[arg(long, global = true)]
    budget: Option<u128>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check whether the frame operator is a scalar multiple of the identity
    Verify,
    /// Evaluate the order-m bound
    Bound {
        /// Use the unit form (requires <tau_j, tau_j> = 1)
        #[arg(long)]
        unit: bool,
    },
    /// Sym^m dimension and tightness of the lifted configuration
    Tensor {
        /// Refuse Sym^m dimensions above this
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Check the Zauner-type conditions (n = d^2)
    Zauner {
        /// Compare off-diagonal terms with |n| for this n instead of |d^2|
        #[arg(long)]
        target_n: Option<u64>,
    },
    /// Check the existence conditions: unit pairings, tightness, equality (and norm with --strong)
    Question,
    /// Check <tau_j, tau_j> = a and |<tau_j, tau_k>|^2 = gamma
    Equiangular {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// Absolute value as p^e, or 0
        #[arg(long)]
        gamma: String,
    },
    /// Enumerate configurations over a bounded-height rational grid
    Search {
        /// Visit every ordering of the vectors
        #[arg(long)]
        no_pruning: bool,
    },
    /// Classical real/complex comparator bounds (floating point)
    Classical {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = FieldArg::C)]
        field: FieldArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    R,
    C,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match &cli.command {
        Cmd::Verify => Command::Verify,
        Cmd::Bound { .. } => Command::Bound,
        Cmd::Tensor { .. } => Command::Tensor,
        Cmd::Zauner { .. } => Command::Zauner,
        Cmd::Question => Command::Question,
        Cmd::Equiangular { .. } => Command::Equiangular,
        Cmd::Search { .. } => Command::Search,
        Cmd::Classical { .. } => Command::Classical,
    };
    let mut request = RunRequest::new(command);
    request.input = cli.input;
    request.m = cli.m;
    request.strong = cli.strong;
    request.workers = cli.workers;
    request.format = match cli.format {
        Format::Text => OutputFormat::Text,
        Format::Machine => OutputFormat::Machine,
    };
    request.search = SearchOverrides {
        mode: cli.mode,
        height: cli.height,
        limit: cli.limit,
        budget: cli.budget,
        no_pruning: false,
    };
    match cli.command {
        Cmd::Bound { unit } => request.unit = unit,
        Cmd::Tensor { cap } => request.cap = cap,
        Cmd::Zauner { target_n } => request.target_n = target_n,
        Cmd::Equiangular { a, gamma } => {
            request.a = Some(a);
            request.gamma = Some(gamma);
        }
        Cmd::Search { no_pruning } => request.search.no_pruning = no_pruning,
        Cmd::Classical { d, n, field } => {
            request.d = Some(d);
            request.n = Some(n);
            request.field = Some(match field {
                FieldArg::R => Field::Real,
                FieldArg::C => Field::Complex,
            });
        }
        Cmd::Verify | Cmd::Question => {}
    }

    let report = run(&request);
    print!("{}", report.render());
    ExitCode::from(report.exit_code() as u8)
}
