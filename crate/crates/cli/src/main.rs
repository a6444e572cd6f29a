//! `theta`: tabulate `rho_0`, run the verification suites, evaluate a Gauss sum.
//!
//! Exit codes: 0 success, 1 a verification failure, 2 a usage or configuration error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use theta_core::harness::{cmd_gauss, cmd_table, cmd_verify, write_table, HarnessError, RunConfig, TableFormat};

#[derive(Parser)]
#[command(
    name = "theta",
    version,
    about = "Coefficients of theta functions on the n-fold cover of GL_2 over F_q(x)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate rho_0(r, eps, i) over a range of r and i.
    Table(TableArgs),
    /// Run the named verification suites.
    Verify(VerifyArgs),
    /// Print the Gauss sum g(r, eps, c).
    Gauss(GaussArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic of F_q.
    #[arg(long, default_value_t = 7)]
    p: u32,
    /// Degree of F_q over F_p.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Order of the cover; must divide q - 1.
    #[arg(long, default_value_t = 3)]
    n: u32,
    /// eps is the embedding zeta_n -> exp(2 pi i eps / n).
    #[arg(long = "eps", default_value_t = 1)]
    eps_exp: u32,
    /// Defining polynomial of F_q over F_p, lowest degree first ("1,0,1").
    #[arg(long)]
    modulus: Option<String>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Cache file for coefficient sums; THETA_CACHE takes precedence.
    #[arg(long)]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct RangeArgs {
    /// Largest deg r enumerated when no --r is given.
    #[arg(long)]
    max_deg: Option<usize>,
    /// Explicit r as a canonical string (element codes, lowest degree first); repeatable.
    #[arg(long = "r")]
    r: Vec<String>,
    /// Explicit i; repeatable, or comma separated.
    #[arg(long = "i", value_delimiter = ',', allow_negative_numbers = true)]
    i: Vec<i64>,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    range: RangeArgs,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[command(flatten)]
    range: RangeArgs,
    /// Suite name or "all"; repeatable, or comma separated.
    #[arg(long = "suite", value_delimiter = ',', default_value = "all")]
    suite: Vec<String>,
    /// Seed for the random matrices of theorem1.
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random matrices drawn by theorem1.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Largest deg c for the Gauss sum and discriminant suites.
    #[arg(long)]
    c_max_deg: Option<usize>,
    /// Explicit matrix "a,b,c,d" of element codes for theorem1; repeatable.
    #[arg(long = "g")]
    g: Vec<String>,
    /// Emit the report as JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GaussArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Numerator r as a canonical string.
    #[arg(long)]
    r: String,
    /// Monic modulus c as a canonical string.
    #[arg(long)]
    c: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn codes(s: &str, what: &str) -> Result<Vec<u32>, HarnessError> {
    s.split(',')
        .map(|v| v.trim().parse::<u32>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| HarnessError::Config(format!("{what} {s:?} is not a comma separated list of element codes")))
}

fn config(field: &FieldArgs) -> Result<RunConfig, HarnessError> {
    let mut cfg = RunConfig::new(field.p, field.m, field.n);
    cfg.eps_exp = field.eps_exp;
    cfg.modulus = field.modulus.as_deref().map(|s| codes(s, "modulus")).transpose()?;
    cfg.jobs = field.jobs;
    cfg.cache = field.cache.clone();
    Ok(cfg)
}

fn apply_range(cfg: &mut RunConfig, range: &RangeArgs) {
    cfg.max_deg = range.max_deg;
    if !range.r.is_empty() {
        cfg.r_list = Some(range.r.clone());
    }
    if !range.i.is_empty() {
        cfg.i_list = Some(range.i.clone());
    }
}

fn print(text: &str) -> Result<(), HarnessError> {
    let mut stdout = std::io::stdout().lock();
    stdout
        .write_all(text.as_bytes())
        .and_then(|_| stdout.flush())
        .map_err(|source| HarnessError::Io {
            path: "<stdout>".into(),
            source,
        })
}

fn run(cli: Cli) -> Result<bool, HarnessError> {
    match cli.command {
        Command::Table(a) => {
            let mut cfg = config(&a.field)?;
            apply_range(&mut cfg, &a.range);
            cfg.format = match a.format {
                Format::Json => TableFormat::Json,
                Format::Csv => TableFormat::Csv,
            };
            let table = cmd_table(&cfg)?;
            log::info!("{} rows", table.rows.len());
            match &a.out {
                Some(path) => write_table(&table, cfg.format, path)?,
                None => print(&table.render(cfg.format)?)?,
            }
            Ok(true)
        }
        Command::Verify(a) => {
            let mut cfg = config(&a.field)?;
            apply_range(&mut cfg, &a.range);
            cfg.suites = a.suite.clone();
            cfg.seed = a.seed;
            cfg.samples = a.samples;
            cfg.c_max_deg = a.c_max_deg;
            if !a.g.is_empty() {
                let mut gs = Vec::with_capacity(a.g.len());
                for g in &a.g {
                    let v = codes(g, "matrix")?;
                    let m: [u32; 4] = v
                        .try_into()
                        .map_err(|_| HarnessError::Config(format!("matrix {g:?} needs exactly four entries")))?;
                    gs.push(m);
                }
                cfg.g_list = Some(gs);
            }
            let report = cmd_verify(&cfg)?;
            let text = if a.json { report.to_json()? } else { report.render() };
            print(&text)?;
            Ok(report.passed())
        }
        Command::Gauss(a) => {
            let cfg = config(&a.field)?;
            let g = cmd_gauss(&cfg, &a.r, &a.c)?;
            let text = if a.json {
                let mut s = serde_json::to_string_pretty(&g)?;
                s.push('\n');
                s
            } else {
                g.render()
            };
            print(&text)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
