//! End-to-end SNR sweeps rendered as CSV, and helpers for reading curves.

use super::config::ChannelConfig;
use super::sim::{simulate_bep, Simulation};
use crate::code::IndexCode;
use crate::codegen::{construct, decoding_plan};
use crate::enumerate::{enumerate_optimal_codes, optimal_length};
use crate::error::{Error, Result};
use crate::problem::IndexCodingProblem;
use std::fmt::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

/// Where a simulated code comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodeSelector {
    /// The min-max construction.
    Algorithm2,
    /// A matrix file.
    Matrix(PathBuf),
    /// The `k`-th (1-based) optimal-length code in enumeration order.
    Enumerated(usize),
}

impl FromStr for CodeSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || {
            Error::InvalidArgument(format!(
                "unknown code selector `{s}`; expected alg2, matrix:<path> or enum:<index>"
            ))
        };
        match s {
            "alg2" | "algorithm2" => return Ok(CodeSelector::Algorithm2),
            _ => {}
        }
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "matrix" if !rest.is_empty() => Ok(CodeSelector::Matrix(PathBuf::from(rest))),
            "enum" => match rest.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(CodeSelector::Enumerated(k)),
                _ => Err(Error::InvalidArgument(format!(
                    "enumeration index must be a positive integer, got `{rest}`"
                ))),
            },
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for CodeSelector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeSelector::Algorithm2 => f.write_str("alg2"),
            CodeSelector::Matrix(p) => write!(f, "matrix:{}", p.display()),
            CodeSelector::Enumerated(k) => write!(f, "enum:{k}"),
        }
    }
}

impl CodeSelector {
    /// Builds, reads or enumerates the selected code.
    pub fn resolve(&self, problem: &IndexCodingProblem) -> Result<IndexCode> {
        match self {
            CodeSelector::Algorithm2 => Ok(construct(problem)?.code),
            CodeSelector::Matrix(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                IndexCode::from_toml_str(&text)
            }
            CodeSelector::Enumerated(k) => {
                let codes = enumerate_optimal_codes(problem, optimal_length(problem)?)?;
                let total = codes.len();
                codes.into_iter().nth(k - 1).ok_or_else(|| {
                    Error::InvalidArgument(format!(
                        "enumeration index {k} is out of range; there are {total} codes"
                    ))
                })
            }
        }
    }
}

/// A code to simulate with its label for the output.
#[derive(Debug, Clone)]
pub struct LabeledCode {
    pub label: String,
    pub source: String,
    pub code: IndexCode,
}

/// Simulates every code and renders one CSV. With more than one code the
/// rows gain a leading `code` column.
pub fn sweep(
    problem: &IndexCodingProblem,
    codes: &[LabeledCode],
    config: &ChannelConfig,
) -> Result<(String, Vec<Simulation>)> {
    if codes.is_empty() {
        return Err(Error::InvalidArgument("no code to simulate".into()));
    }
    let sims = codes
        .iter()
        .map(|c| simulate_bep(problem, &c.code, &decoding_plan(&c.code, problem)?, config))
        .collect::<Result<Vec<_>>>()?;
    let mut s = String::new();
    let _ = writeln!(s, "# seed = {}", config.seed);
    let _ = writeln!(s, "# config = {}", config.describe());
    let _ = writeln!(s, "# config_sha256 = {}", config.hash());
    let _ = writeln!(s, "# snr_db is Es/N0 with unit noise variance");
    for c in codes {
        let _ = writeln!(
            s,
            "# code {} = {} matrix_sha256 = {}",
            c.label,
            c.source,
            c.code.matrix_hash()
        );
    }
    let compare = codes.len() > 1;
    if compare {
        s.push_str("code,");
    }
    s.push_str("receiver,demand,snr_db,trials,bit_errors,bep\n");
    for (c, sim) in codes.iter().zip(&sims) {
        for r in &sim.records {
            if compare {
                let _ = write!(s, "{},", c.label);
            }
            let _ = writeln!(
                s,
                "{},{},{},{},{},{:.6e}",
                r.receiver + 1,
                r.demand + 1,
                r.snr_db,
                r.trials,
                r.bit_errors,
                r.bep
            );
        }
    }
    Ok((s, sims))
}

/// Error rate against SNR with the trial count behind each point.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub snr_db: Vec<f64>,
    pub errors: Vec<u64>,
    pub trials: Vec<u64>,
}

impl Curve {
    /// Pooled curve of a receiver over its demands.
    pub fn receiver(sim: &Simulation, receiver: usize) -> Self {
        let t = sim.receiver_totals(receiver);
        Curve {
            snr_db: t.iter().map(|x| x.0).collect(),
            errors: t.iter().map(|x| x.1).collect(),
            trials: t.iter().map(|x| x.2).collect(),
        }
    }

    pub fn bep(&self, i: usize) -> f64 {
        self.errors[i] as f64 / self.trials[i] as f64
    }

    /// Binomial standard deviation of the estimate at point `i`.
    pub fn sigma(&self, i: usize) -> f64 {
        let b = self.bep(i);
        (b * (1.0 - b) / self.trials[i] as f64).sqrt()
    }

    /// SNR where the curve first falls to `target`, interpolating
    /// `log10(bep)` linearly between grid points. Zero-error points count as
    /// half an error.
    pub fn snr_at(&self, target: f64) -> Option<f64> {
        let lg = |i: usize| (self.errors[i] as f64).max(0.5).log10() - (self.trials[i] as f64).log10();
        let t = target.log10();
        for i in 0..self.snr_db.len().saturating_sub(1) {
            let (a, b) = (lg(i), lg(i + 1));
            if a >= t && b <= t && a > b {
                let f = (a - t) / (a - b);
                return Some(self.snr_db[i] + f * (self.snr_db[i + 1] - self.snr_db[i]));
            }
        }
        None
    }

    /// True when `self` is not above `other` by more than the combined
    /// 3-sigma slack at any point.
    pub fn at_or_below(&self, other: &Curve) -> bool {
        (0..self.snr_db.len()).all(|i| {
            let slack = 3.0 * (self.sigma(i).powi(2) + other.sigma(i).powi(2)).sqrt();
            self.bep(i) <= other.bep(i) + slack
        })
    }
}
