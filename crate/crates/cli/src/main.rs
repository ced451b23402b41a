mod commands;
mod plot;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Parser)]
#[command(name = "wachspress", version, about = "Exact adjoints, residual arrangements and Wachspress coordinates")]
struct Cli {
    /// Add wall-clock timings to the report (makes output run-dependent).
    #[arg(long, global = true)]
    timings: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Warren,
    Kernel,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Barycentric,
    Baselocus,
    Inverse,
    Dim,
}

#[derive(Subcommand)]
enum Command {
    /// Adjoint hypersurface from the dual's triangulation, the vanishing system, or both.
    Adjoint {
        /// Polytope JSON file or built-in fixture name.
        polytope: String,
        #[arg(long, value_enum, default_value = "both")]
        method: Method,
    },
    /// Residual arrangement of the facet hyperplanes.
    Residual { polytope: String },
    /// Wachspress coordinates at a rational point.
    Coords {
        polytope: String,
        /// Comma separated rationals, e.g. "1/2,1/3".
        #[arg(long)]
        point: String,
    },
    /// Seeded checks of the Wachspress map.
    MapCheck {
        polytope: String,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Adjoint of the Newton region of a monomial ideal and the Segre class expression.
    Segre {
        /// Exponent vectors separated by ';', e.g. "2,6;3,4;5,1;7,0".
        #[arg(long)]
        points: String,
    },
    /// Moments of the uniform distribution on a polytope.
    Moments {
        polytope: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Also check the moment generating identity (simplicial input only).
        #[arg(long)]
        verify: bool,
    },
    /// Degree, genus and linear system invariants of a simple 3-polytope.
    Invariants3d {
        #[arg(required_unless_present = "table1")]
        polytope: Option<String>,
        /// Reconcile the built-in fixtures against the table of simple types.
        #[arg(long, conflicts_with = "polytope")]
        table1: bool,
        /// Skip the degree-d linear system (the slowest step).
        #[arg(long)]
        no_gamma: bool,
    },
    /// SVG picture of a polygon with its edge lines, residual points and adjoint curve.
    Plot {
        polytope: String,
        #[arg(long)]
        svg: PathBuf,
    },
    /// Regenerate the fixture JSON files.
    Fixtures {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let mut rep = RunReport::new(argv, cli.timings);
    let outcome = match cli.command {
        Command::Adjoint { polytope, method } => commands::adjoint(&mut rep, &polytope, method),
        Command::Residual { polytope } => commands::residual(&mut rep, &polytope),
        Command::Coords { polytope, point } => commands::coords(&mut rep, &polytope, &point),
        Command::MapCheck { polytope, suite, seed } => commands::map_check(&mut rep, &polytope, suite, seed),
        Command::Segre { points } => commands::segre(&mut rep, &points),
        Command::Moments {
            polytope,
            max_degree,
            verify,
        } => commands::moments(&mut rep, &polytope, max_degree, verify),
        Command::Invariants3d {
            polytope,
            table1,
            no_gamma,
        } => {
            if table1 {
                commands::table1(&mut rep, !no_gamma)
            } else {
                commands::invariants3d(&mut rep, polytope.as_deref().unwrap_or_default(), !no_gamma)
            }
        }
        Command::Plot { polytope, svg } => commands::plot(&mut rep, &polytope, &svg),
        Command::Fixtures { out } => commands::fixtures(&mut rep, out),
    };
    if let Err(e) = outcome {
        rep.set_error(&e);
    }
    println!("{}", rep.to_json());
    ExitCode::from(rep.exit_code())
}
