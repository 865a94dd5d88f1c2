use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sectional::hilbert::format_vector;
use sectional::report::{render, run, verdicts_text};
use sectional::ring::RingSpec;
use sectional::semigroup::sg_closure_gap;
use sectional::spec::{parse_spec, JobSpec, OutputFormat};

#[derive(Parser)]
#[command(name = "sectional", version, about = "Hilbert coefficients, sectional genera and index of reducibility of parameter ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Text => OutputFormat::Text,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full report for a job.
    Run {
        spec: PathBuf,
        /// Override the spec's nmax.
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Print only the inequality checks.
    Verdict { spec: PathBuf },
    /// Lattice points in the saturation of a 2-dimensional semigroup but not in it.
    Gap {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

enum Failure {
    Parse(String),
    Compute(String),
}

fn load(path: &PathBuf, nmax: Option<usize>) -> Result<JobSpec, Failure> {
    let src = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    let mut job = parse_spec(&src).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?;
    if let Some(n) = nmax {
        if n < JobSpec::min_nmax(job.dim) {
            return Err(Failure::Parse(format!(
                "--nmax must be at least dimension + 3 = {}",
                JobSpec::min_nmax(job.dim)
            )));
        }
        job.nmax = n;
    }
    Ok(job)
}

fn execute(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Run { spec, nmax, format } => {
            let mut job = load(&spec, nmax)?;
            job.format = format.into();
            let report = run(&job).map_err(|e| Failure::Compute(e.to_string()))?;
            Ok(render(&report, job.format))
        }
        Command::Verdict { spec } => {
            let job = load(&spec, None)?;
            let report = run(&job).map_err(|e| Failure::Compute(e.to_string()))?;
            let mut out = verdicts_text(&report.verdicts);
            for d in &report.diagnostics {
                out += &format!("note: {d}\n");
            }
            Ok(out)
        }
        Command::Gap { spec, format } => {
            let job = load(&spec, None)?;
            let RingSpec::Semigroup(s) = &job.ring else {
                return Err(Failure::Parse("gap needs a semigroup mode spec".into()));
            };
            let gap = sg_closure_gap(s).map_err(|e| Failure::Compute(e.to_string()))?;
            let points: Vec<String> = gap.iter().map(|v| format_vector(v)).collect();
            Ok(match format {
                Format::Json => {
                    let v = json!({ "size": gap.len().to_string(), "points": points });
                    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
                }
                Format::Csv => {
                    let mut out = format!("path,value\nsize,{}\n", gap.len());
                    for (i, p) in points.iter().enumerate() {
                        out += &format!("points.{i},{p}\n");
                    }
                    out
                }
                Format::Text => {
                    let mut out = format!("gap size {}\n", gap.len());
                    for p in &points {
                        out += &format!("{p}\n");
                    }
                    out
                }
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
