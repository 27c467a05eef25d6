//! `chern`: Chern curvature, Ricci contractions and Einstein residuals from
//! structure-equation files, the example catalog and coordinate charts.
//!
//! Exit codes: 0 when the command succeeds and its condition holds, 1 when
//! the condition fails, 2 on input errors.

mod commands;
mod input;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use chern_core::invariant::{EinsteinMode, GridSpec, RicciKind};
use chern_core::scalar::{C64, CQ};
use chern_core::tolerance::EINSTEIN_TOL;

use commands::{Outcome, Output, CONFORMAL_TOL, FIRST_CE_TOL};
use input::ParamArgs;
use report::Format;

#[derive(Parser, Debug)]
#[command(name = "chern", version, about = "Chern connection curvature and Chern-Einstein checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Structure-equation file.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    /// Catalog entry name (see `catalog list`).
    #[arg(long, global = true)]
    entry: Option<String>,
    /// Metric parameters, e.g. `r=1,s=2,u=1/2-1/3i,ell=1`.
    #[arg(long, global = true)]
    params: Option<String>,
    /// Tolerance of the tested condition [default: 1e-9; chart conformal 1e-8; chart first-ce 1e-7].
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Scan grid, e.g. `r=0.5:3:0.25 s=geom:0.25:3:8 u=0,0.5 phases=8`.
    #[arg(long, global = true)]
    grid: Option<String>,
    /// Seed for random chart metrics and sample points.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads for `scan` and `catalog verify` [default: all cores].
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Exact rational arithmetic instead of floats.
    #[arg(long, global = true)]
    exact: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a structure file and print it canonically with diagnostics.
    Parse,
    /// Curvature tensor, Ricci contractions, scalar curvatures.
    Curvature,
    /// Einstein residual of one Ricci contraction.
    Einstein {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        kind: u8,
        #[arg(long, default_value = "strong")]
        mode: EinsteinMode,
    },
    /// Minimal Einstein residual over the surface metric family.
    Scan {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        kind: u8,
        #[arg(long, default_value = "strong")]
        mode: EinsteinMode,
    },
    /// Worked examples with closed-form values.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
    /// Chern-Yamabe problem on a periodic grid.
    Yamabe {
        /// Problem file (TOML).
        #[arg(long)]
        problem: PathBuf,
    },
    /// Lee form and local conformal Kähler test.
    Lee,
    /// Gauduchon test and degree.
    Gauduchon,
    /// Bogomolov-Lübke pairing.
    Bl,
    /// Coordinate-chart computations.
    Chart {
        #[command(subcommand)]
        command: ChartCommand,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogCommand {
    List,
    /// Compare computed values with the closed forms.
    Verify,
    /// Print an entry as a structure file.
    Export { name: String },
}

#[derive(Subcommand, Debug)]
enum ChartCommand {
    List,
    Curvature {
        #[arg(long)]
        metric: String,
        /// `x1,y1,x2,y2` [default: a sample point of the domain].
        #[arg(long, allow_negative_numbers = true)]
        point: Option<String>,
        /// Radius of `hopf-chart`.
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    Conformal {
        #[arg(long)]
        metric: String,
        #[arg(long)]
        factor: String,
        #[arg(long, allow_negative_numbers = true)]
        point: Option<String>,
        #[arg(long, default_value_t = 1.0)]
        r: f64,
    },
    FirstCe {
        #[arg(long)]
        potential: String,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        sign: f64,
        #[arg(long, default_value_t = 100)]
        points: usize,
    },
}

fn kind(k: u8) -> Result<RicciKind> {
    Ok(RicciKind::from_number(k)?)
}

fn run(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    let params = match &g.params {
        Some(text) => ParamArgs::parse(text)?,
        None => ParamArgs::default(),
    };
    let tol = |default: f64| g.tol.unwrap_or(default);
    let resolve = || input::resolve(g.file.as_deref(), g.entry.as_deref(), &params);
    macro_rules! backend {
        ($f:ident ( $($arg:expr),* )) => {{
            let input = resolve()?;
            if g.exact { commands::$f::<CQ>(&input $(, $arg)*) } else { commands::$f::<C64>(&input $(, $arg)*) }
        }};
    }
    match &cli.command {
        Command::Parse => {
            let path = g.file.as_deref().ok_or_else(|| anyhow::anyhow!("parse needs --file"))?;
            commands::parse(path)
        }
        Command::Curvature => backend!(curvature()),
        Command::Einstein { kind: k, mode } => backend!(einstein(kind(*k)?, *mode, tol(EINSTEIN_TOL))),
        Command::Scan { kind: k, mode } => {
            let grid = match &g.grid {
                Some(text) => GridSpec::parse(text)?,
                None => GridSpec::default(),
            };
            commands::scan_command(&resolve()?, kind(*k)?, *mode, &grid, tol(EINSTEIN_TOL), g.workers)
        }
        Command::Catalog { command } => match command {
            CatalogCommand::List => Ok(commands::catalog_list()),
            CatalogCommand::Verify => commands::catalog_verify(g.entry.as_deref(), &params, g.exact, g.workers),
            CatalogCommand::Export { name } => commands::catalog_export(name, &params),
        },
        Command::Yamabe { problem } => commands::yamabe(problem),
        Command::Lee => backend!(lee()),
        Command::Gauduchon => backend!(gauduchon()),
        Command::Bl => backend!(bl(tol(EINSTEIN_TOL))),
        Command::Chart { command } => match command {
            ChartCommand::List => Ok(commands::chart_list()),
            ChartCommand::Curvature { metric, point, r } => {
                commands::chart_curvature(metric, *r, point.as_deref(), g.seed)
            }
            ChartCommand::Conformal { metric, factor, point, r } => {
                commands::chart_conformal(metric, factor, *r, point.as_deref(), g.seed, tol(CONFORMAL_TOL))
            }
            ChartCommand::FirstCe { potential, sign, points } => {
                commands::chart_first_ce(potential, *sign, *points, g.seed, tol(FIRST_CE_TOL))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            match outcome.output {
                Output::Report(r) => print!("{}", r.render(cli.global.format)),
                Output::Raw(text) => print!("{text}"),
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn global_flags_after_subcommand() {
        let cli = Cli::try_parse_from(["chern", "einstein", "--kind", "3", "--entry", "hopf", "--exact"]).unwrap();
        assert!(cli.global.exact);
        assert_eq!(cli.global.entry.as_deref(), Some("hopf"));
        assert!(Cli::try_parse_from(["chern", "einstein", "--kind", "4"]).is_err());
    }
}
