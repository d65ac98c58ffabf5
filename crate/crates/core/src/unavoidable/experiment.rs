//! Detection rates on random colourings with a minimum size per colour.

use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{detect_in_matrix, unavoidable_family, ColourMatrix};
use crate::error::{Error, Result};
use crate::rng::substream;

/// Rejection-sampling retries per trial before the trial is given up.
pub const MAX_RETRIES: u64 = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    /// Least number of edges every colour must receive.
    pub min_edges: usize,
    pub trials: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.t < 2 {
            return Err(Error::Config(format!("t = {}: unavoidable patterns need t >= 2", self.t)));
        }
        crate::colouring::check_r(self.r)?;
        if self.n < 2 * self.r * self.t {
            return Err(Error::Config(format!(
                "n = {} is below 2rt = {}",
                self.n,
                2 * self.r * self.t
            )));
        }
        let total = self.n * (self.n - 1) / 2;
        if self.min_edges.checked_mul(self.r).is_none_or(|need| need > total) {
            return Err(Error::Config(format!(
                "{} colours with at least {} edges each do not fit in {total} edges",
                self.r, self.min_edges
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    /// Replay key: the colouring is drawn from substream
    /// `(seed, trial, retry)`.
    pub seed: u64,
    pub retry: Option<u64>,
    pub colour_counts: Vec<usize>,
    /// Family member detected, if any.
    pub member: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub successes: usize,
    pub success_fraction: f64,
    /// Trials whose rejection sampling ran out of retries.
    pub unsampled: usize,
    pub trials: Vec<TrialRecord>,
    /// Wall-clock mean; not part of the reproducible payload.
    #[serde(skip)]
    pub mean_detect_ms: f64,
}

/// The colouring of `K_n` for one trial retry, as pair colours in
/// upper-triangle order.
pub fn trial_colouring(cfg: &ExperimentConfig, trial: usize, retry: u64) -> Vec<u8> {
    let mut rng = substream(cfg.seed, trial as u64, retry);
    let total = cfg.n * (cfg.n - 1) / 2;
    (0..total).map(|_| rng.gen_range(0..cfg.r) as u8).collect()
}

pub fn density_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let family = unavoidable_family(cfg.r, cfg.t)?;
    let n = cfg.n;
    let results: Vec<(TrialRecord, f64)> = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut record = TrialRecord {
                trial,
                seed: cfg.seed,
                retry: None,
                colour_counts: Vec::new(),
                member: None,
            };
            for retry in 0..MAX_RETRIES {
                let cells = trial_colouring(cfg, trial, retry);
                let mut counts = vec![0usize; cfg.r];
                for &c in &cells {
                    counts[c as usize] += 1;
                }
                if counts.iter().all(|&k| k >= cfg.min_edges) {
                    let m = ColourMatrix::from_fn(n, cfg.r, |u, v| cells[super::ColouredClique::pair_index(n, u, v)]);
                    let start = Instant::now();
                    record.member = detect_in_matrix(&m, &family).map(|d| d.member);
                    let ms = start.elapsed().as_secs_f64() * 1000.0;
                    record.retry = Some(retry);
                    record.colour_counts = counts;
                    return (record, ms);
                }
            }
            (record, 0.0)
        })
        .collect();
    let sampled = results.iter().filter(|(r, _)| r.retry.is_some()).count();
    let successes = results.iter().filter(|(r, _)| r.member.is_some()).count();
    let total_ms: f64 = results.iter().map(|(_, ms)| ms).sum();
    Ok(ExperimentReport {
        config: cfg.clone(),
        successes,
        success_fraction: successes as f64 / cfg.trials as f64,
        unsampled: cfg.trials - sampled,
        trials: results.into_iter().map(|(r, _)| r).collect(),
        mean_detect_ms: if sampled == 0 { 0.0 } else { total_ms / sampled as f64 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, min_edges: usize, trials: usize) -> ExperimentConfig {
        ExperimentConfig {
            n,
            r: 2,
            t: 2,
            min_edges,
            trials,
            seed: 7,
        }
    }

    #[test]
    fn config_errors() {
        assert!(density_experiment(&cfg(20, 10, 0)).is_err());
        assert!(density_experiment(&cfg(20, 200, 1)).is_err());
        assert!(density_experiment(&cfg(7, 1, 1)).is_err());
    }

    #[test]
    fn small_run_is_reproducible() {
        let a = density_experiment(&cfg(16, 40, 6)).unwrap();
        let b = density_experiment(&cfg(16, 40, 6)).unwrap();
        assert_eq!(a.trials, b.trials);
        assert!(a.trials.iter().all(|t| t.colour_counts.iter().all(|&k| k >= 40)));
    }
}
