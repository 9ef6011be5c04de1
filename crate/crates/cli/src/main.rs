use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use satseq_cli::commands::{Outcome, Session};
use satseq_cli::config::{CommandSpec, OutputFormat, Overrides, RunConfig};
use satseq_cli::error::CliError;
use serde_json::json;

#[derive(Parser)]
#[command(name = "satseq", version, about = "Saturation sequences and covariants of binary forms")]
struct Cli {
    #[command(flatten)]
    global: GlobalFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalFlags {
    /// JSON config file; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    primes: Option<usize>,
    #[arg(long, global = true)]
    max_rows: Option<usize>,
    #[arg(long, global = true)]
    guard_max_rows: Option<usize>,
    /// Seconds allowed per sub-computation.
    #[arg(long, global = true)]
    time_budget: Option<u64>,
    /// Compute ranks exactly over the rationals.
    #[arg(long, global = true)]
    certify: bool,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Saturation sequences for a range of degrees.
    Table {
        #[arg(long, default_value_t = 4)]
        d_min: usize,
        #[arg(long, default_value_t = 12)]
        d_max: usize,
    },
    /// Saturation sequence and bounds for one degree.
    Saturation {
        #[arg(long)]
        d: usize,
    },
    /// Evaluate a covariant expression such as "((F,F)_2,F)_3".
    Transvect {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        expr: String,
        /// Comma-separated coefficients of x1^d, x1^(d-1) x2, ..., x2^d; generic when absent.
        #[arg(long, value_delimiter = ',')]
        coeffs: Option<Vec<String>>,
    },
    #[command(subcommand)]
    Gordan(GordanCommand),
    /// Splitting type of the Hessian bundle.
    Splitting {
        #[arg(long)]
        d: usize,
    },
    /// Isotypic decomposition of Sym^m S_d.
    Decompose {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        m: usize,
    },
    /// Check every stored exact value and identity.
    VerifyPaper,
    /// Scan for patterns in the sequences; evidence only.
    Explore {
        #[arg(long, default_value_t = 12)]
        d_max: usize,
        #[arg(long, default_value_t = 30)]
        scan_d_max: usize,
    },
}

#[derive(Subcommand)]
enum GordanCommand {
    /// Expand every lower and upper syzygy for degree d.
    Verify {
        #[arg(long)]
        d: usize,
    },
    /// The matrix and determinant Delta_t.
    Delta {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
    },
    /// Least N with every Delta_t nonzero from N up to d_max.
    Threshold {
        #[arg(long)]
        s: usize,
        #[arg(long, default_value_t = 40)]
        d_max: usize,
    },
}

fn spec(c: Command) -> CommandSpec {
    match c {
        Command::Table { d_min, d_max } => CommandSpec::Table { d_min, d_max },
        Command::Saturation { d } => CommandSpec::Saturation { d },
        Command::Transvect { d, expr, coeffs } => CommandSpec::Transvect { d, expr, coeffs },
        Command::Gordan(GordanCommand::Verify { d }) => CommandSpec::GordanVerify { d },
        Command::Gordan(GordanCommand::Delta { d, s, t }) => CommandSpec::GordanDelta { d, s, t },
        Command::Gordan(GordanCommand::Threshold { s, d_max }) => CommandSpec::GordanThreshold { s, d_max },
        Command::Splitting { d } => CommandSpec::Splitting { d },
        Command::Decompose { d, m } => CommandSpec::Decompose { d, m },
        Command::VerifyPaper => CommandSpec::VerifyPaper,
        Command::Explore { d_max, scan_d_max } => CommandSpec::Explore { d_max, scan_d_max },
    }
}

fn render(cfg: &RunConfig, out: &Outcome) -> Result<String, CliError> {
    let cfg_json = serde_json::to_string(cfg)?;
    Ok(match cfg.format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&json!({ "config": cfg, "result": out.result }))? + "\n"
        }
        OutputFormat::Text => format!("# config: {cfg_json}\n{}", out.text),
        OutputFormat::Csv => format!("# config: {cfg_json}\n{}", out.csv),
    })
}

fn run(cli: Cli) -> Result<Option<CliError>, CliError> {
    let g = cli.global;
    let flags = Overrides {
        format: g.format,
        seed: g.seed,
        primes: g.primes,
        max_rows: g.max_rows,
        guard_max_rows: g.guard_max_rows,
        time_budget_secs: g.time_budget,
        certify: g.certify,
        cache_dir: g.cache_dir,
        no_cache: g.no_cache,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), flags, spec(cli.command))?;
    let mut session = Session::new(cfg)?;
    let out = session.run()?;
    if let Some(cache) = session.cache.as_mut() {
        cache.save()?;
    }
    let text = render(&session.cfg, &out)?;
    std::io::stdout().write_all(text.as_bytes())?;
    Ok(out.failure)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(e)) | Err(e) => {
            eprintln!("satseq: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
