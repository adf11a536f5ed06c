//! Command-line front end.

use crate::analytic::tabulate;
use crate::channel::{sweep, ChannelConfig, CodeSelector, LabeledCode};
use crate::codegen::{construct, decoding_plan, transmission_counts};
use crate::enumerate::{classify_codes, enumerate_optimal_codes, optimal_length};
use crate::error::{Error, Result};
use crate::graph::{build_flow_graph, prune};
use crate::problem::{reduce_to_square, IndexCodingProblem};
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Debug, Parser)]
#[command(
    name = "icfade",
    version,
    about = "Min-max index codes and their error rates over fading channels"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Prune the information flow graph and print its components.
    Prune {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Build the min-max optimal code and its decoding plan.
    Codegen {
        #[arg(long)]
        problem: PathBuf,
        /// Write the code matrix here.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the decoding plan table here.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// List every optimal-length code and classify it by worst-case count.
    Enumerate {
        #[arg(long)]
        problem: PathBuf,
        /// Code length (defaults to the optimum).
        #[arg(long)]
        length: Option<usize>,
        /// Write the per-code table here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the message error probability for p and c grids.
    Analytic {
        /// Per-transmission error probabilities.
        #[arg(long = "p", value_delimiter = ',')]
        ps: Vec<f64>,
        /// Transmission counts.
        #[arg(long = "c", value_delimiter = ',')]
        cs: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate error rates against SNR.
    Simulate {
        #[arg(long)]
        problem: PathBuf,
        /// `alg2`, `matrix:<path>` or `enum:<index>`; repeat to compare.
        #[arg(long = "code", default_value = "alg2")]
        codes: Vec<String>,
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<u64>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn load_problem(path: &Path) -> Result<IndexCodingProblem> {
    IndexCodingProblem::from_toml_str(&read(path)?)
}

/// Writes `text` to `path`, or appends it to `stdout` when no path is given.
fn emit(path: Option<&Path>, text: &str, stdout: &mut String) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::io(p, e)),
        None => {
            stdout.push_str(text);
            Ok(())
        }
    }
}

fn say(stdout: &mut String, text: String) {
    stdout.push_str(&text);
    stdout.push('\n');
}

/// Runs a parsed command, writing results to `stdout`.
pub fn execute(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    let text = match cli.threads {
        Some(0) => return Err(Error::InvalidArgument("--threads must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?
            .install(|| dispatch(cli.command))?,
        None => dispatch(cli.command)?,
    };
    stdout.write_all(text.as_bytes()).map_err(|e| Error::io("<stdout>", e))
}

fn dispatch(command: Command) -> Result<String> {
    let mut stdout = String::new();
    let stdout = &mut stdout;
    match command {
        Command::Prune { problem } => {
            let p = load_problem(&problem)?;
            let red = reduce_to_square(&p)?;
            let pruned = prune(&build_flow_graph(&red.problem)?);
            say(stdout, pruned.to_string());
        }
        Command::Codegen { problem, out, plan } => {
            let p = load_problem(&problem)?;
            let c = construct(&p)?;
            let table = decoding_plan(&c.code, &p)?;
            let counts = transmission_counts(&table);
            say(stdout, format!("code {}", c.code));
            say(stdout, format!("length {}", c.code.len()));
            say(stdout, format!("max transmissions {}", counts.max));
            stdout.push_str(&table.to_string());
            if let Some(path) = out {
                emit(Some(&path), &c.code.to_toml_string(), stdout)?;
            }
            if let Some(path) = plan {
                emit(Some(&path), &table.to_table(), stdout)?;
            }
        }
        Command::Enumerate { problem, length, out } => {
            let p = load_problem(&problem)?;
            let n = match length {
                Some(n) => n,
                None => optimal_length(&p)?,
            };
            let class = classify_codes(&p, enumerate_optimal_codes(&p, n)?)?;
            say(stdout, class.summary());
            if let Some(path) = out {
                emit(Some(&path), &class.to_csv(), stdout)?;
            }
        }
        Command::Analytic { ps, cs, out } => {
            let ps = if ps.is_empty() {
                (0..25).map(|k| 0.01 + 0.02 * k as f64).collect()
            } else {
                ps
            };
            let cs = if cs.is_empty() { (1..=32).collect() } else { cs };
            emit(out.as_deref(), &tabulate(&ps, &cs)?, stdout)?;
        }
        Command::Simulate {
            problem,
            codes,
            config,
            out,
            seed,
            trials,
        } => {
            let p = load_problem(&problem)?;
            let mut cfg = ChannelConfig::from_toml_str(&read(&config)?)?;
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if let Some(t) = trials {
                cfg.trials = t;
            }
            cfg.validate()?;
            let labeled = codes
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let sel: CodeSelector = s.parse()?;
                    Ok(LabeledCode {
                        label: format!("C{}", i + 1),
                        source: sel.to_string(),
                        code: sel.resolve(&p)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let (csv, _) = sweep(&p, &labeled, &cfg)?;
            emit(out.as_deref(), &csv, stdout)?;
        }
    }
    Ok(std::mem::take(stdout))
}

/// Parses `args`, runs the command and returns the process exit code.
/// Diagnostics go to stderr.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(stdout, "{e}");
            }
            return code;
        }
    };
    match execute(cli, stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
