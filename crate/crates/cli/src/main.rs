//! `becurv`: generate fixture graphs, analyze graph JSON and run the
//! hypercube characterization harnesses.
//!
//! Exit codes: 0 success or agreement, 1 usage or input error, 2 harness
//! disagreement.

mod report;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use becurv::fixtures::{build_fixture, catalog, catalog_file_stem};
use becurv::json::{graph_from_json, graph_to_json};
use becurv::rigidity::main_theorem_harness;
use becurv::spectral::semigroup_sharpness_deviation;
use becurv::symmetrize::project;
use becurv::WeightedGraph;
use clap::{Parser, Subcommand};
use serde::Serialize;

use report::{AnalyzeOptions, SemigroupReport, VerifyReport};

const DEFAULT_TIMES: [f64; 3] = [0.1, 0.5, 1.0];

#[derive(Parser)]
#[command(
    name = "becurv",
    version,
    about = "Curvature and hypercube rigidity for weighted graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a named fixture as graph JSON.
    Generate {
        /// hypercube, ou-chain, scaled-hypercube, laborde-hebbare,
        /// hss-negative, ncp2, diagonal-square, cube-times-diagonal-square,
        /// path or cycle.
        name: String,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        kappa: Option<f64>,
        #[arg(long)]
        n: Option<usize>,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Print a full analysis report.
    Analyze {
        /// Graph JSON file, or `-` for stdin.
        input: PathBuf,
        /// Skip the spectrum and the main-theorem report.
        #[arg(long)]
        skip_spectrum: bool,
        /// Vertex for the per-root HSS and symmetry checks.
        #[arg(long)]
        root: Option<String>,
        /// Eigenvalue clustering tolerance; defaults to 1e-6 max(1, λ_max).
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Evaluate the five characterizations; exit 2 when they disagree.
    Verify { input: PathBuf },
    /// Write the spherical projection around a root as graph JSON.
    Project {
        input: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Semigroup sharpness deviation of the distance function from a root.
    Semigroup {
        input: PathBuf,
        #[arg(long)]
        root: String,
        #[arg(long, default_value_t = 2.0)]
        k: f64,
        /// Comma-separated times; defaults to 0.1,0.5,1.0.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        times: Option<Vec<f64>>,
    },
    /// Write every catalog fixture and an index to a directory.
    ExportFixtures { dir: PathBuf },
}

enum Outcome {
    Ok,
    Disagree,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Disagree) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Generate {
            name,
            dim,
            kappa,
            n,
            out,
        } => {
            let mut params = Vec::new();
            if let Some(d) = dim {
                params.push(("dim".to_owned(), d as f64));
            }
            if let Some(k) = kappa {
                params.push(("kappa".to_owned(), k));
            }
            if let Some(n) = n {
                params.push(("n".to_owned(), n as f64));
            }
            let g = build_fixture(&name, &params)?;
            emit(out.as_deref(), &graph_to_json(&g))?;
        }
        Command::Analyze {
            input,
            skip_spectrum,
            root,
            tol,
        } => {
            if let Some(t) = tol {
                if !(t > 0.0) {
                    bail!("--tol must be positive, got {t}");
                }
            }
            let g = load(&input)?;
            let report = report::analyze(
                &g,
                AnalyzeOptions {
                    skip_spectrum,
                    root: root.as_deref(),
                    tol,
                },
            )?;
            print_json(&report)?;
        }
        Command::Verify { input } => {
            let g = load(&input)?;
            let report = main_theorem_harness(&g)?;
            let agree = report.agree;
            print_json(&VerifyReport {
                kind: "verify",
                agree,
                verdicts: report.verdicts(),
                report,
            })?;
            if !agree {
                return Ok(Outcome::Disagree);
            }
        }
        Command::Project { input, root, out } => {
            let g = load(&input)?;
            let x0 = g.vertex(&root)?;
            emit(out.as_deref(), &graph_to_json(&project(&g, x0)?))?;
        }
        Command::Semigroup {
            input,
            root,
            k,
            times,
        } => {
            let g = load(&input)?;
            let x0 = g.vertex(&root)?;
            let f0: Vec<f64> = g
                .shells(x0)?
                .dist
                .iter()
                .map(|d| d.map(|d| d as f64).ok_or(becurv::Error::Disconnected))
                .collect::<Result<_, _>>()?;
            let times = times.unwrap_or_else(|| DEFAULT_TIMES.to_vec());
            let mut warnings = Vec::new();
            if times.is_empty() {
                let w = "no times given; deviation is vacuously 0".to_owned();
                eprintln!("warning: {w}");
                warnings.push(w);
            }
            let deviation = semigroup_sharpness_deviation(&g, &f0, k, &times)?;
            print_json(&SemigroupReport {
                kind: "semigroup",
                root,
                k,
                times,
                deviation,
                warnings,
            })?;
        }
        Command::ExportFixtures { dir } => export_fixtures(&dir)?,
    }
    Ok(Outcome::Ok)
}

fn load(path: &Path) -> anyhow::Result<WeightedGraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .context("reading stdin")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    graph_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => {
            fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display()))
        }
        None => writeln!(io::stdout().lock(), "{text}").context("writing stdout"),
    }
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    emit(None, &serde_json::to_string_pretty(value)?)
}

#[derive(Serialize)]
struct IndexEntry {
    file: String,
    name: String,
    params: Vec<(String, f64)>,
    expected: Vec<becurv::fixtures::Expectation>,
}

fn export_fixtures(dir: &Path) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut index = Vec::new();
    for entry in catalog() {
        let file = format!("{}.json", catalog_file_stem(&entry));
        let g = entry.build()?;
        emit(Some(&dir.join(&file)), &graph_to_json(&g))?;
        index.push(IndexEntry {
            file,
            name: entry.name,
            params: entry.params,
            expected: entry.expected,
        });
    }
    emit(
        Some(&dir.join("index.json")),
        &serde_json::to_string_pretty(&index)?,
    )
}
