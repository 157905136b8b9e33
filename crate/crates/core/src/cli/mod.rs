//! Command-line front end: `table`, `trial` and `fit`.
//!
//! Exit codes: 0 success, 1 I/O or runtime failure, 2 bad arguments,
//! 3 degenerate regression. Every failure prints one line to stderr.

pub mod render;
pub mod table;

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::Error;
use crate::experiment::{
    fit_power_law, run_samples, simulate_trial, GridConfig, SampleStats, SeedDiscipline,
    PUBLISHED_K_LIST, PUBLISHED_MAX_STRIP, PUBLISHED_N_LIST,
};
use crate::lattice::Domain;
use crate::{DEFAULT_EPS, DEFAULT_TRIALS};

pub use render::{render_svg, Layers, RenderSpec};
pub use table::{format_sig, markdown, read_csv, write_csv, TableRecord};

/// Sizes run by `table` unless `--full` or `--n-list` is given.
pub const DESK_N_LIST: [u32; 5] = [16, 32, 64, 128, 256];

#[derive(Debug, Parser)]
#[command(
    name = "percstrip",
    version,
    about = "Strip-resampling experiment on critical percolation exploration paths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a grid of samples and write one record per (n, k).
    Table(TableArgs),
    /// Run a single trial, optionally rendering it as SVG.
    Trial(TrialArgs),
    /// Fit median ~ c * (k/n)^alpha to a table.
    Fit(FitArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Domain sizes (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<u32>>,
    /// Resampled row counts (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub k_list: Option<Vec<u32>>,
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, default_value_t = DEFAULT_EPS, allow_hyphen_values = true)]
    pub eps: f64,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    /// Include the n = 512 and n = 1024 columns.
    #[arg(long)]
    pub full: bool,
    /// Evaluate every pair with k <= 2n + 1, not only strips up to 1/16.
    #[arg(long)]
    pub all_pairs: bool,
    /// Accept sizes that are not powers of two.
    #[arg(long)]
    pub relaxed_seeding: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Pick {
    /// The trial at the lower-median distance of its sample.
    Median,
}

#[derive(Debug, Args)]
pub struct TrialArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..), required_unless_present = "pick", conflicts_with = "pick")]
    pub trial: Option<u32>,
    /// Choose the trial from its sample instead of by number.
    #[arg(long, value_enum)]
    pub pick: Option<Pick>,
    /// Sample size used by --pick.
    #[arg(long, default_value_t = DEFAULT_TRIALS, value_parser = clap::value_parser!(u32).range(1..))]
    pub trials: u32,
    #[arg(long, default_value_t = DEFAULT_EPS, allow_hyphen_values = true)]
    pub eps: f64,
    #[arg(long)]
    pub render: Option<PathBuf>,
    /// Vertical window y0:y1 of the rendering, in domain units.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_clip)]
    pub clip: Option<(f64, f64)>,
    /// Leave out the hexagons in the rendering.
    #[arg(long)]
    pub no_hexagons: bool,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: Option<u32>,
    #[arg(long)]
    pub relaxed_seeding: bool,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Table in the CSV layout written by `table` (n, k and median are required).
    #[arg(long)]
    pub input: PathBuf,
}

fn parse_clip(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected y0:y1, got {s:?}"))?;
    let y0: f64 = a
        .trim()
        .parse()
        .map_err(|_| format!("bad clip bound {a:?}"))?;
    let y1: f64 = b
        .trim()
        .parse()
        .map_err(|_| format!("bad clip bound {b:?}"))?;
    if !(y0.is_finite() && y1.is_finite() && y0 < y1) {
        return Err(format!("clip window must satisfy y0 < y1, got {s:?}"));
    }
    Ok((y0, y1))
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Degenerate(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io(_) | CliError::Runtime(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Degenerate(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Io(m)
            | CliError::Degenerate(m)
            | CliError::Runtime(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateRegression(_) => CliError::Degenerate(e.to_string()),
            Error::Structural(_) | Error::ThreadPool(_) => CliError::Runtime(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn io_err(context: &str, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{context}: {e}"))
}

fn seeding(relaxed: bool) -> SeedDiscipline {
    if relaxed {
        SeedDiscipline::Relaxed
    } else {
        SeedDiscipline::PowerOfTwo
    }
}

fn write_output(
    path: &Option<PathBuf>,
    stdout: &mut dyn Write,
    bytes: &[u8],
) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io_err(&p.display().to_string(), e))?;
            let mut w = BufWriter::new(file);
            w.write_all(bytes)
                .and_then(|_| w.flush())
                .map_err(|e| io_err(&p.display().to_string(), e))
        }
        None => stdout.write_all(bytes).map_err(|e| io_err("stdout", e)),
    }
}

impl TableArgs {
    pub fn grid(&self) -> GridConfig {
        let default_n = if self.full {
            PUBLISHED_N_LIST.to_vec()
        } else {
            DESK_N_LIST.to_vec()
        };
        GridConfig {
            n_list: self.n_list.clone().unwrap_or(default_n),
            k_list: self
                .k_list
                .clone()
                .unwrap_or_else(|| PUBLISHED_K_LIST.to_vec()),
            trials: self.trials,
            eps: self.eps,
            seeding: seeding(self.relaxed_seeding),
            threads: self.threads.map(|t| t as usize),
            max_strip: if self.all_pairs {
                None
            } else {
                Some(PUBLISHED_MAX_STRIP)
            },
        }
    }
}

pub fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let stats: Vec<SampleStats> = crate::experiment::run_grid(&args.grid())?;
    let records: Vec<TableRecord> = stats.iter().map(TableRecord::from).collect();
    let bytes = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(&mut buf, &records).map_err(|e| io_err("csv", e))?;
            buf
        }
        Format::Markdown => markdown(&records).into_bytes(),
    };
    write_output(&args.out, stdout, &bytes)
}

pub fn cmd_trial(args: &TrialArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let seed = seeding(args.relaxed_seeding);
    let domain = Domain::new(args.n)?;
    let trial = match (args.trial, args.pick) {
        (Some(t), _) => t,
        (None, Some(Pick::Median)) => {
            let sample = run_samples(
                &[(args.n, args.k)],
                args.trials,
                args.eps,
                seed,
                args.threads.map(|t| t as usize),
            )?;
            sample[0].median_trial().trial
        }
        (None, None) => {
            return Err(CliError::Usage(
                "either --trial or --pick is required".into(),
            ))
        }
    };
    let record = simulate_trial(&domain, args.k, trial, args.eps, seed)?;
    let r = &record.result;
    let line = format!(
        "{},{},{},{},{},{}\n",
        r.n,
        r.k,
        r.trial,
        format_sig(r.distance, table::CSV_DIGITS),
        r.first_path_len,
        r.second_path_len
    );
    stdout
        .write_all(line.as_bytes())
        .map_err(|e| io_err("stdout", e))?;
    if let Some(path) = &args.render {
        let spec = RenderSpec {
            layers: Layers {
                hexagons: !args.no_hexagons,
                ..Layers::default()
            },
            clip: args.clip,
        };
        let svg = render_svg(&domain, &record, &spec);
        write_output(&Some(path.clone()), stdout, svg.as_bytes())?;
    }
    Ok(())
}

pub fn cmd_fit(args: &FitArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let display = args.input.display().to_string();
    let file = File::open(&args.input).map_err(|e| io_err(&display, e))?;
    let records = read_csv(file).map_err(|e| io_err(&display, e))?;
    let stats: Vec<SampleStats> = records
        .iter()
        .map(|r| SampleStats {
            n: r.n,
            k: r.k,
            trials: r.trials,
            median: r.median,
            msd: r.msd,
            eps_strip: r.eps_strip,
        })
        .collect();
    let fit = fit_power_law(&stats)?;
    let text = format!(
        "alpha,prefactor,r2\n{},{},{}\n",
        fit.alpha, fit.prefactor, fit.r2
    );
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| io_err("stdout", e))
}

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{}", e.render());
                return 0;
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                let _ = writeln!(
                    stderr,
                    "error: a subcommand is required (table, trial or fit)"
                );
                return 2;
            }
            let text = e.render().to_string();
            let first = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{first}");
            return 2;
        }
    };
    let outcome = match &cli.command {
        Command::Table(a) => cmd_table(a, stdout),
        Command::Trial(a) => cmd_trial(a, stdout),
        Command::Fit(a) => cmd_fit(a, stdout),
    };
    match outcome.and_then(|_| stdout.flush().map_err(|e| io_err("stdout", e))) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.exit_code()
        }
    }
}
