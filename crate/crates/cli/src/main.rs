//! `qspectra` command-line frontend.
//!
//! Every subcommand maps to one library operation and prints JSON (default),
//! CSV or plain text.  Exit codes: 0 success, 2 usage or input error,
//! 3 budget exceeded, 4 numerically inconclusive.

mod commands;
mod input;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "qspectra", version, about = "Quadratic Lagrange spectra: orbits, approximation constants, penetration, Heisenberg kernels")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 42, global = true)]
    pub seed: u64,
    /// Complexity bound `h_max`.
    #[arg(long = "h-max", global = true)]
    pub h_max: Option<f64>,
    /// Window `a:b` on the real line.
    #[arg(long, global = true)]
    pub window: Option<String>,
    /// Neighbourhood radius ε.
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    /// Write the output to FILE instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Orbit cache file (read if it matches, written otherwise).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Worker threads.
    #[arg(long, default_value_t = 1, global = true)]
    pub threads: usize,
    /// Write `x y` series for plotting to FILE.
    #[arg(long = "emit-plot-data", global = true)]
    pub emit_plot_data: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Orbit points of α₀ with h ≤ h_max in a window.
    Orbit(commands::OrbitArgs),
    /// Classification and fixed points of a matrix, or the automorph of a surd.
    Fix(commands::FixArgs),
    /// Tail infima of h(r)|x − r| over a threshold grid.
    Approx(commands::ApproxArgs),
    /// Certified approximation constant at a periodic point.
    Periodic(commands::PeriodicArgs),
    /// Certified values at every class of discriminant up to a bound.
    Spectrum(commands::SpectrumArgs),
    /// Hurwitz-constant upper bounds.
    Hurwitz(commands::HurwitzArgs),
    /// Penetration sequence of the ray from ∞ to a target.
    Penetrate(commands::PenetrateArgs),
    /// Diameter of the intersection of two ε-neighbourhoods.
    Intersect(commands::IntersectArgs),
    /// Cygan distances and horoball depth for two Heisenberg points.
    Cygan(commands::CyganArgs),
    /// Heisenberg group law, or the arithmetic objects over ℚ(i√m).
    Heis(commands::HeisArgs),
    /// Integral test and Monte-Carlo experiment for 0–∞ laws.
    Khintchine(commands::KhintchineArgs),
}

fn run(cli: Cli) -> Result<commands::Output, Failure> {
    let g = &cli.global;
    match cli.cmd {
        Cmd::Orbit(a) => commands::orbit(g, a),
        Cmd::Fix(a) => commands::fix(g, a),
        Cmd::Approx(a) => commands::approx(g, a),
        Cmd::Periodic(a) => commands::periodic(g, a),
        Cmd::Spectrum(a) => commands::spectrum(g, a),
        Cmd::Hurwitz(a) => commands::hurwitz(g, a),
        Cmd::Penetrate(a) => commands::penetrate(g, a),
        Cmd::Intersect(a) => commands::intersect(g, a),
        Cmd::Cygan(a) => commands::cygan(g, a),
        Cmd::Heis(a) => commands::heis(g, a),
        Cmd::Khintchine(a) => commands::khintchine(g, a),
    }
}

fn emit(g: &Global, out: &commands::Output) -> io::Result<()> {
    let body = out.render(g.format);
    match &g.out {
        Some(p) => File::create(p)?.write_all(body.as_bytes())?,
        None => io::stdout().lock().write_all(body.as_bytes())?,
    }
    if let Some(p) = &g.emit_plot_data {
        let mut f = File::create(p)?;
        for (x, y) in &out.plot {
            writeln!(f, "{x} {y}")?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads.max(1)).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let global = cli.global.clone();
    match run(cli) {
        Ok(out) => {
            if let Err(e) = emit(&global, &out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
