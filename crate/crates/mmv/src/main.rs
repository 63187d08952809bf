use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mmv::{cmd_cocycle, cmd_connection, cmd_pair, cmd_periods, cmd_verify, read_stdin, CliError, Config, Outcome};

#[derive(Parser)]
#[command(name = "mmv", version, about = "Modular forms of the second kind, the universal connection, periods of Δ")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args)]
struct Opts {
    /// decimal digits P for numerics
    #[arg(long, global = true, env = mmv::PRECISION_ENV, default_value_t = 50)]
    precision: u32,
    /// q-expansion order M
    #[arg(long, global = true, default_value_t = 80)]
    qorder: usize,
    /// base point τ₀ = t·i
    #[arg(long, global = true, default_value_t = 2.0)]
    basepoint: f64,
    /// bound for projection residual and relation defects
    #[arg(long, global = true, default_value_t = 1e-10)]
    tolerance: f64,
    /// weights 2n, comma separated
    #[arg(long, global = true, value_delimiter = ',', default_value = "10")]
    weights: Vec<u32>,
    /// truncation degree N of the connection
    #[arg(long, global = true, default_value_t = 2)]
    degree: usize,
    #[arg(long, global = true)]
    j: Option<u32>,
    #[arg(long, global = true)]
    k: Option<u32>,
    /// worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// write JSON here instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// ω̃_{j,k} (with --j/--k) or the canonical basis of each --weights entry
    Cocycle,
    /// Ω̃ up to --degree for the classes of --weights
    Connection,
    /// ω±, η± and the period-matrix determinant
    Periods,
    /// {ω̃_Δ, ω̃_{j,k}} and its trivialization
    Pair,
    /// check D-closedness of cochain JSON read from stdin
    Verify,
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let o = &cli.opts;
    if let Some(jobs) = o.jobs {
        exact_kernel::par::configure_jobs(jobs);
    }
    match cli.cmd {
        Cmd::Cocycle => cmd_cocycle(o.j, o.k, &o.weights),
        Cmd::Connection => cmd_connection(&o.weights, o.degree),
        Cmd::Periods => cmd_periods(&Config {
            precision: o.precision,
            qorder: o.qorder,
            basepoint: o.basepoint,
            tolerance: o.tolerance,
        }),
        Cmd::Pair => cmd_pair(&o.weights, o.j, o.k),
        Cmd::Verify => cmd_verify(&read_stdin()?),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.output).expect("serializable");
            match &cli.opts.output {
                Some(p) => {
                    if let Err(e) = std::fs::write(p, text + "\n") {
                        eprintln!("error: {}: {e}", p.display());
                        return ExitCode::from(2);
                    }
                }
                None => {
                    let mut out = std::io::stdout().lock();
                    if let Err(e) = writeln!(out, "{text}") {
                        if e.kind() != std::io::ErrorKind::BrokenPipe {
                            eprintln!("error: {e}");
                            return ExitCode::from(2);
                        }
                    }
                }
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification failed");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
