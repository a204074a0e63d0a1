use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpoincare::blowup::Mode;
use gpoincare::{Error, Result};
use gpoincare_cli::{render, CompareOpts, PoincareOpts, Scene};

#[derive(Parser)]
#[command(name = "gpoincare", version, about = "Equivariant resolutions and Poincaré series of plane curve germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Also write the JSON report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Override the valuation mode of the scene.
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Truncation degree for series; defaults to the scene value.
    #[arg(long, global = true, value_name = "N")]
    degree_bound: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Curves,
    Divisorial,
}

#[derive(Subcommand)]
enum Command {
    /// Resolve the scene and print the decorated graph.
    Resolve {
        scene: PathBuf,
        /// Write the quotient graph in DOT format.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Equivariant and usual Poincaré series.
    Poincare {
        scene: PathBuf,
        #[command(flatten)]
        which: PoincareFlags,
    },
    /// Compare two scenes by series and by equivariant topology.
    Compare {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        series: bool,
        #[arg(long)]
        topology: bool,
    },
    /// Recover the characters of the action from the equivariant series.
    Infer { scene: PathBuf },
    /// Usual Poincaré series from codimensions of jet ideals.
    Oracle { scene: PathBuf },
    /// Check the hypotheses under which the series determines the topology.
    Check { scene: PathBuf },
}

#[derive(Args)]
struct PoincareFlags {
    #[arg(long)]
    plain: bool,
    #[arg(long)]
    equivariant: bool,
    /// Print only the finite product.
    #[arg(long)]
    factor: bool,
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String> {
    let mode = cli.mode.map(|m| match m {
        ModeArg::Curves => Mode::Curves,
        ModeArg::Divisorial => Mode::Divisorial,
    });
    let load = |p: &PathBuf| Scene::load(p, mode);
    let bound = |s: &Scene| cli.degree_bound.unwrap_or(s.degree_bound);
    let value = match &cli.command {
        Command::Resolve { scene, dot } => {
            let (v, d) = gpoincare_cli::cmd_resolve(&load(scene)?)?;
            if let Some(p) = dot {
                write(p, &d)?;
            }
            v
        }
        Command::Poincare { scene, which } => {
            let s = load(scene)?;
            let opts = PoincareOpts { plain: which.plain, equivariant: which.equivariant, factor_only: which.factor };
            gpoincare_cli::cmd_poincare(&s, bound(&s), opts)?
        }
        Command::Compare { a, b, series, topology } => {
            let (sa, sb) = (load(a)?, load(b)?);
            let d = cli.degree_bound.unwrap_or(sa.degree_bound.max(sb.degree_bound));
            gpoincare_cli::cmd_compare(&sa, &sb, d, CompareOpts { series: *series, topology: *topology })?
        }
        Command::Infer { scene } => {
            let s = load(scene)?;
            gpoincare_cli::cmd_infer(&s, bound(&s))?
        }
        Command::Oracle { scene } => {
            let s = load(scene)?;
            gpoincare_cli::cmd_oracle(&s, bound(&s))?
        }
        Command::Check { scene } => gpoincare_cli::cmd_check(&load(scene)?)?,
    };
    let text = render(&value);
    if let Some(p) = &cli.json {
        write(p, &text)?;
    }
    Ok(text)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
