use std::path::PathBuf;
use std::process;

use clap::{Parser, Subcommand, ValueEnum};
use cli::{run, Command, Format, RunConfig, EXIT_USAGE};
use pwl_core::{parse_rational, Rat};

#[derive(Parser)]
#[command(name = "famsched", about = "Exact closed-form scheduling strategies", version)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum, Default)]
enum FormatArg {
    /// Fractions decorated with repeating-decimal readings.
    #[default]
    Table,
    /// Machine-oriented CSV values.
    Csv,
    /// Bare reduced fractions.
    Fractions,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Table => Format::Table,
            FormatArg::Csv => Format::Csv,
            FormatArg::Fractions => Format::Fractions,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve an instance and write the full closed-form strategy.
    Solve {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        /// Append alternative strategy tables for tied spans.
        #[arg(long)]
        alt_strategies: bool,
    },
    /// Sample cost-to-go and strategy of the initial state to CSV.
    Export {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Resolve ties toward the highest class instead of the lowest.
        #[arg(long)]
        alt_strategies: bool,
    },
    /// Execute the strategy forward from a start instant.
    Replay {
        instance: PathBuf,
        /// Decision instant of the first job, as a rational like 5 or -3/2.
        #[arg(long)]
        t0: String,
        /// Delay added to one job's completion; repeat per job, in order.
        #[arg(long = "delay")]
        delays: Vec<String>,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
        #[arg(long)]
        alt_strategies: bool,
    },
    /// Run a built-in worked example against its golden record.
    Example {
        /// ex1..ex9 for single windows, nosetup and setups for full instances.
        id: String,
        #[arg(long, value_enum, default_value_t = FormatArg::Table)]
        format: FormatArg,
    },
}

fn rational(text: &str, what: &str) -> Rat {
    parse_rational(text).unwrap_or_else(|e| {
        eprintln!("error: {what} `{text}` is not a rational: {e}");
        process::exit(EXIT_USAGE);
    })
}

fn main() {
    let args = Args::parse();
    let cfg = match args.command {
        Cmd::Solve { instance, output, format, alt_strategies } => RunConfig {
            instance_path: Some(instance),
            output_path: output,
            format: format.into(),
            alt_strategies,
            ..RunConfig::new(Command::Solve)
        },
        Cmd::Export { instance, output, alt_strategies } => RunConfig {
            instance_path: Some(instance),
            output_path: output,
            format: Format::Csv,
            alt_strategies,
            ..RunConfig::new(Command::Export)
        },
        Cmd::Replay { instance, t0, delays, format, alt_strategies } => RunConfig {
            instance_path: Some(instance),
            format: format.into(),
            t0: Some(rational(&t0, "start instant")),
            perturbations: delays
                .iter()
                .map(|d| rational(d, "delay"))
                .collect(),
            alt_strategies,
            ..RunConfig::new(Command::Replay)
        },
        Cmd::Example { id, format } => RunConfig {
            example_id: Some(id),
            format: format.into(),
            ..RunConfig::new(Command::Example)
        },
    };
    process::exit(run(&cfg, &mut std::io::stdout()));
}
