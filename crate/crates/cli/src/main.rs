//! `odd-szabo {homology|spectral|jones|verify}`.
//!
//! Exit codes: 0 success, 1 a `verify` check failed, 2 bad input or flags,
//! 3 internal error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use odd_szabo::zlinalg::Coefficients;
use odd_szabo::{Error, Kind, PlanarDiagram};
use odd_szabo_cli::{run, Command, RunConfig};

#[derive(Parser)]
#[command(name = "odd-szabo", version, about = "Odd Khovanov homology and its spectral sequence")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    /// Diagram as `PD[X[..],..]` or JSON.
    #[arg(long, global = true, conflicts_with = "file")]
    pd: Option<String>,
    /// File holding the diagram.
    #[arg(long, global = true)]
    file: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "y")]
    kind: KindArg,
    #[arg(long, global = true, value_enum, default_value = "z")]
    coeffs: CoeffArg,
    /// Last page computed explicitly; E^inf is always included.
    #[arg(long, global = true, default_value_t = 8)]
    r_max: usize,
    /// Reorient the arcs of the 0-smoothing at random.
    #[arg(long, global = true)]
    orient_seed: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    #[arg(long, global = true, hide = true)]
    inject_fault: bool,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Bigraded homology of the edge maps and the Jones polynomial.
    Homology,
    /// Pages of the spectral sequence from the higher maps.
    Spectral,
    /// Jones polynomial as graded Euler characteristic.
    Jones,
    /// Structural and oracle checks; without a diagram, the fixture corpus.
    Verify,
}

#[derive(ValueEnum, Clone, Copy)]
enum KindArg {
    X,
    Y,
}

#[derive(ValueEnum, Clone, Copy)]
enum CoeffArg {
    Z,
    Z2,
}

fn input(cli: &Cli) -> Result<Option<PlanarDiagram>, Error> {
    let text = match (&cli.pd, &cli.file) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))?,
        (None, None) => return Ok(None),
    };
    PlanarDiagram::parse(text.trim()).map(Some)
}

fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Parse(_) | Error::NotPlanar(_) | Error::Orientation(_))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 || rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: invalid --jobs {n}");
            return ExitCode::from(2);
        }
    }
    let diagram = match input(&cli) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let command = match cli.command {
        Cmd::Homology => Command::Homology,
        Cmd::Spectral => Command::Spectral,
        Cmd::Jones => Command::Jones,
        Cmd::Verify => Command::Verify,
    };
    if diagram.is_none() && command != Command::Verify {
        eprintln!("error: --pd or --file is required");
        return ExitCode::from(2);
    }
    let cfg = RunConfig {
        command,
        diagram,
        kind: match cli.kind {
            KindArg::X => Kind::X,
            KindArg::Y => Kind::Y,
        },
        coeffs: match cli.coeffs {
            CoeffArg::Z => Coefficients::Z,
            CoeffArg::Z2 => Coefficients::Z2,
        },
        r_max: cli.r_max,
        orient_seed: cli.orient_seed,
        inject_fault: cli.inject_fault,
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if is_input_error(&e) { 2 } else { 3 });
        }
    };
    print!("{}", report.text);
    if let Some(path) = &cli.json {
        let body = serde_json::to_string_pretty(&report.json).expect("report serializes") + "\n";
        if let Err(e) = std::fs::write(path, body) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(3);
        }
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
