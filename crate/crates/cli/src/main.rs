use std::path::PathBuf;
use std::process::ExitCode;

use abelianfft_cli::commands::{
    self, CirculantAction, DirectionArg, Engine, Settings, Streams, MAX_BENCH_EXPONENT,
};
use abelianfft_cli::error::CliResult;
use abelianfft_cli::io::Format;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "abelianfft", version, about = "Fourier transforms on finite abelian groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Absolute tolerance, scaled by max(1, ‖input‖∞).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,

    /// Seed for every randomized check.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest group order for which a dense matrix may be built.
    #[arg(long, global = true, env = "ABELIANFFT_ORACLE_CAP", default_value_t = 4096)]
    oracle_cap: usize,

    /// File format; inferred from the extension when omitted.
    #[arg(long, global = true)]
    format: Option<FormatArg>,

    /// Tab-separated tables for scripts.
    #[arg(long, global = true)]
    porcelain: bool,

    /// Digits after the decimal point in human-readable output.
    #[arg(long, global = true, default_value_t = 6)]
    precision: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Apply F (synthesis) or D = (1/|G|)F* (analysis) to a vector.
    Transform {
        group: String,
        input: PathBuf,
        #[arg(long, value_enum, default_value = "analysis")]
        direction: DirectionArg,
        #[arg(long, value_enum, default_value = "fast")]
        engine: Engine,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Group convolution (c∗d)(x) = Σ_y c(x−y)d(y).
    Convolve {
        group: String,
        c: PathBuf,
        d: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        engine: Engine,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print character values χ_g(x).
    Characters {
        group: String,
        /// Only the row for this element, e.g. `1,1`.
        #[arg(long)]
        element: Option<String>,
    },
    /// Work with the G-circulant generated by a vector.
    Circulant {
        group: String,
        v: PathBuf,
        #[arg(value_enum)]
        action: CirculantAction,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the built-in property and oracle checks.
    Verify {
        /// `all` or one of complex, group, circulant, fourier, fft.
        #[arg(default_value = "all")]
        scope: String,
        /// Skip the soft timing check.
        #[arg(long)]
        no_timing: bool,
    },
    /// Time the radix-2 FFT against the dense transform.
    Bench {
        #[arg(long, default_value_t = 18, value_parser = clap::value_parser!(u32).range(0..=MAX_BENCH_EXPONENT as i64))]
        max_exponent: u32,
        #[arg(long, default_value_t = 7)]
        repetitions: usize,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    let settings = Settings {
        tolerance: cli.tolerance,
        seed: cli.seed,
        oracle_cap: cli.oracle_cap,
        format: cli.format.map(|f| match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }),
        porcelain: cli.porcelain,
        precision: cli.precision,
    };
    settings.validate()?;
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let mut io = Streams { out: &mut stdout, err: &mut stderr };
    match cli.command {
        Command::Transform { group, input, direction, engine, output } => commands::transform(
            &settings,
            &group,
            &input,
            direction.into(),
            engine,
            output.as_deref(),
            &mut io,
        ),
        Command::Convolve { group, c, d, engine, output } => {
            commands::convolve(&settings, &group, &c, &d, engine, output.as_deref(), &mut io)
        }
        Command::Characters { group, element } => {
            commands::characters(&settings, &group, element.as_deref(), &mut io)
        }
        Command::Circulant { group, v, action, output } => {
            commands::circulant(&settings, &group, &v, action, output.as_deref(), &mut io)
        }
        Command::Verify { scope, no_timing } => {
            commands::run_verify(&settings, &scope, !no_timing, &mut io)
        }
        Command::Bench { max_exponent, repetitions } => {
            commands::run_bench(&settings, max_exponent, repetitions, &mut io)
        }
    }
}


fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
