//! Command-line front end. Campaign settings are resolved in three layers:
//! the subcommand's preset, then flags, then `--config`, whose keys win.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use clarkson_lab::campaign::{
    exit_code, merge_config, run_conjecture, run_interpolate, run_verify, run_witness, CampaignConfig, Outcome, Suite,
    EXIT_INVALID,
};
use clarkson_lab::proofs::{default_x_grid, default_y_grid};
use clarkson_lab::{Result, Tolerances};

#[derive(Parser)]
#[command(version, about = "Numerical checks of Clarkson-McCarthy type Schatten norm inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an inequality campaign and write a JSON report.
    Verify(CampaignArgs),
    /// Replay the dual-witness argument on a tuple file.
    Witness {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scan the analytic family on the strip and emit CSV.
    Interpolate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        p: f64,
        #[arg(long, value_delimiter = ',')]
        x_grid: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        y_grid: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search unitary-orbit certificates.
    Conjecture(CampaignArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Full,
    Proofs,
    Conjecture,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    /// JSON object whose keys override the preset and every flag.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long, value_delimiter = ',')]
    suites: Option<Vec<String>>,
    #[arg(long, value_delimiter = ',')]
    p_grid: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    dims: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',')]
    n_values: Option<Vec<usize>>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Margin tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

impl CampaignArgs {
    fn resolve(&self, default: Preset) -> Result<CampaignConfig> {
        let seed = self.seed.unwrap_or(0);
        let mut cfg = match self.preset.unwrap_or(default) {
            Preset::Full => CampaignConfig::full_preset(seed),
            Preset::Proofs => CampaignConfig::proof_preset(seed),
            Preset::Conjecture => CampaignConfig::conjecture_preset(seed),
        };
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        if let Some(s) = &self.suites {
            cfg.suites = s.iter().map(|name| name.parse::<Suite>()).collect::<Result<_>>()?;
        }
        if let Some(p) = &self.p_grid {
            cfg.p_grid = p.clone();
        }
        if let Some(d) = &self.dims {
            cfg.dims = d.clone();
        }
        if let Some(n) = &self.n_values {
            cfg.n_values = n.clone();
        }
        if self.out.is_some() {
            cfg.output = self.out.clone();
        }
        if let Some(t) = self.tol {
            cfg.tolerances.margin = t;
        }
        match &self.config {
            Some(path) => merge_config(&cfg, &std::fs::read_to_string(path)?),
            None => Ok(cfg),
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn finish<T: Outcome>(result: Result<T>, report: impl FnOnce(&T) -> Result<()>) -> i32 {
    let result = result.and_then(|r| report(&r).map(|()| r));
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    exit_code(&result)
}

fn run(cli: Cli) -> i32 {
    match cli.command {
        Command::Verify(args) => finish(args.resolve(Preset::Full).and_then(|cfg| run_verify(&cfg)), |r| {
            r.summary_lines().iter().for_each(|l| println!("{l}"));
            Ok(())
        }),
        Command::Conjecture(args) => {
            finish(args.resolve(Preset::Conjecture).and_then(|cfg| run_conjecture(&cfg)), |r| {
                r.summary_lines().iter().for_each(|l| println!("{l}"));
                Ok(())
            })
        }
        Command::Witness { input, p, out } => finish(run_witness(&input, p, &Tolerances::DEFAULT), |r| {
            emit(&serde_json::to_string_pretty(r)?, out.as_deref())
        }),
        Command::Interpolate { input, p, x_grid, y_grid, out } => {
            let xs = x_grid.unwrap_or_else(default_x_grid);
            let ys = y_grid.unwrap_or_else(default_y_grid);
            finish(run_interpolate(&input, p, &xs, &ys, &Tolerances::DEFAULT), |r| {
                eprintln!("{}", r.summary);
                emit(r.csv.trim_end(), out.as_deref())
            })
        }
    }
}

fn main() -> ExitCode {
    let code = run(Cli::parse());
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_INVALID as u8))
}
