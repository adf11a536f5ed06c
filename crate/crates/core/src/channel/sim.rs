//! Monte Carlo estimation of per-demand decoding error rates.
//!
//! Every trial draws from its own ChaCha8 substream: the key comes from the
//! seed, the stream id is the SNR index and the word position is
//! `trial << 20`. Trials are grouped into fixed chunks and only integer
//! counts are summed, so results do not depend on the thread count.

use super::config::{ChannelConfig, Fading};
use super::modulation::{es_of_db, Constellation};
use crate::code::IndexCode;
use crate::codegen::DecodingPlan;
use crate::error::{Error, Result};
use crate::problem::IndexCodingProblem;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use std::f64::consts::FRAC_1_SQRT_2;

const CHUNK: u64 = 1024;

/// Error count for one demand at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct BepRecord {
    pub receiver: usize,
    pub demand: usize,
    pub snr_db: f64,
    pub trials: u64,
    pub bit_errors: u64,
    pub bep: f64,
}

/// Raw detection errors at one SNR point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointStats {
    pub snr_db: f64,
    pub trials: u64,
    /// Per receiver: code symbols detected wrongly, padding excluded.
    pub transmission_errors: Vec<u64>,
    /// Code symbols per trial.
    pub transmissions: usize,
}

impl PointStats {
    /// Measured per-transmission error probability at `receiver`.
    pub fn transmission_error_rate(&self, receiver: usize) -> f64 {
        self.transmission_errors[receiver] as f64 / (self.trials * self.transmissions as u64) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simulation {
    /// Ordered by receiver, demand, then SNR point.
    pub records: Vec<BepRecord>,
    pub points: Vec<PointStats>,
}

impl Simulation {
    /// Records of one demand across SNR points.
    pub fn demand_curve(&self, receiver: usize, demand: usize) -> Vec<&BepRecord> {
        self.records
            .iter()
            .filter(|r| r.receiver == receiver && r.demand == demand)
            .collect()
    }

    /// `(snr_db, errors, decoded messages)` for a receiver, pooled over its
    /// demands.
    pub fn receiver_totals(&self, receiver: usize) -> Vec<(f64, u64, u64)> {
        self.points
            .iter()
            .map(|pt| {
                let (e, t) = self
                    .records
                    .iter()
                    .filter(|r| r.receiver == receiver && r.snr_db == pt.snr_db)
                    .fold((0, 0), |(e, t), r| (e + r.bit_errors, t + r.trials));
                (pt.snr_db, e, t)
            })
            .collect()
    }
}

fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

fn draw_gain(fading: Fading, rng: &mut impl Rng) -> Complex64 {
    match fading {
        Fading::None => Complex64::new(1.0, 0.0),
        Fading::Rayleigh => complex_normal(rng),
        Fading::Rician { k } => {
            Complex64::new((k / (k + 1.0)).sqrt(), 0.0) + complex_normal(rng) * (1.0 / (k + 1.0)).sqrt()
        }
    }
}

/// Generator for one trial.
pub fn trial_rng(seed: u64, snr_index: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(snr_index);
    rng.set_word_pos((trial as u128) << 20);
    rng
}

/// Sends one frame to a receiver: draws the gain and noise, detects each
/// channel symbol and demaps to code symbols.
pub fn transmit_and_detect(
    constellation: &Constellation,
    points: &[usize],
    n: usize,
    es: f64,
    fading: Fading,
    rng: &mut impl Rng,
    out: &mut Vec<u8>,
) {
    let h = draw_gain(fading, rng) * es.sqrt();
    let scaled: Vec<Complex64> = constellation.points().iter().map(|s| s * h).collect();
    let detected: Vec<usize> = points
        .iter()
        .map(|&k| constellation.detect(scaled[k] + complex_normal(rng), &scaled))
        .collect();
    constellation.demap_frame(&detected, n, out);
}

struct Counts {
    demand_errors: Vec<u64>,
    transmission_errors: Vec<u64>,
}

impl Counts {
    fn zero(demands: usize, receivers: usize) -> Self {
        Counts {
            demand_errors: vec![0; demands],
            transmission_errors: vec![0; receivers],
        }
    }

    fn merge(mut self, other: Counts) -> Counts {
        for (a, b) in self.demand_errors.iter_mut().zip(other.demand_errors) {
            *a += b;
        }
        for (a, b) in self.transmission_errors.iter_mut().zip(other.transmission_errors) {
            *a += b;
        }
        self
    }
}

/// Estimates the decoding error rate of every demand at every SNR point.
pub fn simulate_bep(
    problem: &IndexCodingProblem,
    code: &IndexCode,
    plan: &DecodingPlan,
    config: &ChannelConfig,
) -> Result<Simulation> {
    config.validate()?;
    config.check_field(problem.field())?;
    if code.n() != problem.n() || code.field() != problem.field() {
        return Err(Error::InvalidCode("code does not match the problem".into()));
    }
    let demands = problem.demands();
    let covered = plan.entries.len() == demands.len()
        && plan.entries.iter().zip(&demands).all(|(e, d)| {
            e.receiver == d.receiver && e.demand == d.message && e.terms.iter().all(|&(t, _)| t < code.len())
        });
    if !covered {
        return Err(Error::InvalidCode(
            "decoding plan does not cover the problem's demands".into(),
        ));
    }
    let field = problem.field();
    let q = field.order();
    let constellation = Constellation::for_config(config, field)?;
    let m = problem.m();
    let n_code = code.len();
    let mut by_receiver: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, e) in plan.entries.iter().enumerate() {
        by_receiver[e.receiver].push(i);
    }

    let mut records = Vec::new();
    let mut points = Vec::new();
    let mut per_point: Vec<Counts> = Vec::new();
    for (si, &snr_db) in config.snr_db.iter().enumerate() {
        let es = es_of_db(snr_db);
        let chunks = config.trials.div_ceil(CHUNK);
        let counts = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut acc = Counts::zero(demands.len(), m);
                let mut messages = vec![0u8; problem.n()];
                let mut detected = Vec::with_capacity(n_code);
                for trial in c * CHUNK..((c + 1) * CHUNK).min(config.trials) {
                    let mut rng = trial_rng(config.seed, si as u64, trial);
                    for x in messages.iter_mut() {
                        *x = rng.random_range(0..q);
                    }
                    let sent = code.encode(&messages);
                    let tx = constellation.map_frame(&sent);
                    for (r, entries) in by_receiver.iter().enumerate() {
                        transmit_and_detect(&constellation, &tx, n_code, es, config.fading, &mut rng, &mut detected);
                        acc.transmission_errors[r] += sent.iter().zip(&detected).filter(|(a, b)| a != b).count() as u64;
                        for &i in entries {
                            let e = &plan.entries[i];
                            if e.recover(field, &messages, &detected) != messages[e.demand] {
                                acc.demand_errors[i] += 1;
                            }
                        }
                    }
                }
                acc
            })
            .reduce(|| Counts::zero(demands.len(), m), Counts::merge);
        points.push(PointStats {
            snr_db,
            trials: config.trials,
            transmission_errors: counts.transmission_errors.clone(),
            transmissions: n_code,
        });
        per_point.push(counts);
    }
    for (i, d) in demands.iter().enumerate() {
        for (si, &snr_db) in config.snr_db.iter().enumerate() {
            let errors = per_point[si].demand_errors[i];
            records.push(BepRecord {
                receiver: d.receiver,
                demand: d.message,
                snr_db,
                trials: config.trials,
                bit_errors: errors,
                bep: errors as f64 / config.trials as f64,
            });
        }
    }
    Ok(Simulation { records, points })
}
