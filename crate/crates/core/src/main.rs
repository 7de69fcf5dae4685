use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use bifset::cli::{exit, run, Command, RunOptions};
use bifset::instance::{parse_curve, parse_samples, InstanceFile};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sub {
    /// Newton polyhedra of f and the constraints.
    Polyhedron,
    /// Smoothness of S and nondegeneracy at infinity.
    Nondeg,
    /// Bifurcation superset.
    Bifurcation,
    /// Global monodromy stability of a one-parameter family.
    Stability,
    /// Rabier-function profile along a curve.
    Probe,
}

impl From<Sub> for Command {
    fn from(s: Sub) -> Self {
        match s {
            Sub::Polyhedron => Command::Polyhedron,
            Sub::Nondeg => Command::Nondeg,
            Sub::Bifurcation => Command::Bifurcation,
            Sub::Stability => Command::Stability,
            Sub::Probe => Command::Probe,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "bifset", version, about = "Bifurcation sets of polynomials on affine varieties")]
struct Args {
    #[arg(value_enum)]
    command: Sub,
    /// Instance file (TOML).
    #[arg(long)]
    instance: PathBuf,
    /// Cap on S-pairs per Gröbner computation.
    #[arg(long)]
    budget_pairs: Option<usize>,
    /// Root-finding tolerance.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Comma-separated parameter samples in [0, 1], e.g. `0,1/2,1`.
    #[arg(long)]
    samples: Option<String>,
    /// Curve file for `probe`: one point per line.
    #[arg(long)]
    curve: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

fn fail(code: i32, msg: String) -> ExitCode {
    eprintln!("bifset: {msg}");
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            return fail(exit::COMPUTATION, e.to_string());
        }
    }
    let text = match std::fs::read_to_string(&args.instance) {
        Ok(t) => t,
        Err(e) => return fail(exit::PARSE, format!("{}: {e}", args.instance.display())),
    };
    let file = match InstanceFile::from_toml(&text) {
        Ok(f) => f,
        Err(e) => return fail(exit::PARSE, format!("{}: {e}", args.instance.display())),
    };
    let mut opts = RunOptions { budget_pairs: args.budget_pairs, tolerance: args.tolerance, ..Default::default() };
    if let Some(s) = &args.samples {
        match parse_samples(s) {
            Ok(v) => opts.samples = Some(v),
            Err(e) => return fail(exit::PARSE, e.to_string()),
        }
    }
    if let Some(path) = &args.curve {
        let curve = std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))
            .and_then(|t| parse_curve(&t, file.variables.len()).map_err(|e| e.to_string()));
        match curve {
            Ok(c) => opts.curve = Some(c),
            Err(e) => return fail(exit::PARSE, e),
        }
    }
    let out = run(args.command.into(), &file, &opts);
    print!("{}", out.report);
    ExitCode::from(out.exit_code as u8)
}
