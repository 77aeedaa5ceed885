use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use setyb::brace::derive_sigma_tau;
use setyb::io::{
    build_catalog, merge_reports, parse_brace, parse_input, parse_reports, verify_brace, Input, Level, ReportBundle,
    VerificationReport, YbMapJson, ZoMatrixJson,
};
use setyb::matrix::matrix_rf;
use setyb::Limits;

/// Exit status when some executed check failed.
const EXIT_CHECK_FAILED: u8 = 1;
/// Exit status for unreadable or invalid input.
const EXIT_INVALID: u8 = 2;

#[derive(Parser)]
#[command(
    name = "setyb",
    version,
    about = "Exact verification of set-theoretic Yang-Baxter solutions from skew braces"
)]
struct Cli {
    /// TOML file with a `[limits]` table overriding the default ceilings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every brace of an order into a catalog file.
    Enumerate {
        order: usize,
        /// Include skew braces (nonabelian addition).
        #[arg(long)]
        skew: bool,
        /// Write the catalog here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification suites on a brace or catalog file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LevelArg::All)]
        level: LevelArg,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Zero the per-check wall times so reports are byte-identical
        /// across runs.
        #[arg(long)]
        no_timing: bool,
        /// Worker threads for catalog runs (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the set-theoretic solution of a brace as JSON.
    Solution {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Map)]
        format: Format,
    },
    /// Merge report files into one bundle with totals.
    ReportMerge {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Map,
    Matrix,
    Universal,
    Yangian,
    All,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Self {
        match l {
            LevelArg::Map => Level::Map,
            LevelArg::Matrix => Level::Matrix,
            LevelArg::Universal => Level::Universal,
            LevelArg::Yangian => Level::Yangian,
            LevelArg::All => Level::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Map,
    Matrix,
}

#[derive(Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct Config {
    limits: Limits,
}

fn load_limits(path: Option<&Path>) -> Result<Limits> {
    let Some(path) = path else {
        return Ok(Limits::default());
    };
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let config: Config = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(config.limits)
}

fn emit(json: &impl Serialize, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(json)?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().lock().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let limits = load_limits(cli.config.as_deref())?;
    match cli.command {
        Command::Enumerate { order, skew, out } => {
            if order == 0 {
                bail!("order must be positive");
            }
            let catalog = build_catalog(order, skew, &limits)?;
            emit(&catalog, out.as_deref())?;
            eprintln!("{} braces of order {}", catalog.counts.total, order);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file, level, out, no_timing, jobs } => {
            let input = parse_input(&read(&file)?).with_context(|| format!("invalid input {}", file.display()))?;
            let level = Level::from(level);
            let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.unwrap_or(0)).build()?;
            let mut reports: Vec<VerificationReport> =
                pool.install(|| input.braces().par_iter().map(|b| verify_brace(b, level, &limits)).collect());
            if no_timing {
                reports.iter_mut().for_each(VerificationReport::zero_timings);
            }
            let ok = reports.iter().all(VerificationReport::all_passed);
            match input {
                Input::Brace(_) => emit(&reports[0], out.as_deref())?,
                Input::Catalog(_) => emit(&ReportBundle::new(reports), out.as_deref())?,
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED) })
        }
        Command::Solution { file, format } => {
            let brace = parse_brace(&read(&file)?).with_context(|| format!("invalid brace {}", file.display()))?;
            let map = derive_sigma_tau(&brace)?;
            match format {
                Format::Map => emit(&YbMapJson::from_map(&map), None)?,
                Format::Matrix => emit(&ZoMatrixJson::from_matrix(&matrix_rf(&map)), None)?,
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::ReportMerge { files, out } => {
            let mut inputs = Vec::with_capacity(files.len());
            for f in &files {
                inputs.push(parse_reports(&read(f)?).with_context(|| format!("invalid report {}", f.display()))?);
            }
            let bundle = merge_reports(inputs);
            emit(&bundle, out.as_deref())?;
            Ok(if bundle.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED) })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(EXIT_INVALID)
        }
    }
}
