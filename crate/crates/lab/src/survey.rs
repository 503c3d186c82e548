//! Sharded survey runs over the core per-record pipeline.

use std::path::Path;

use qspeed_core::angleopt::DEFAULT_BUDGET;
use qspeed_core::states::{DEFAULT_MAX_TERMS, MAX_TERMS_LIMIT};
use qspeed_core::survey::{record_at, summarize, SurveyRecord, SurveySummary};

use crate::error::{LabError, Result};
use crate::table::{self, SURVEY_HEADER};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurveyConfig {
    pub samples: u64,
    pub seed: u64,
    /// Worker threads; each takes one contiguous block of indices.
    pub shards: usize,
    pub opt_budget: usize,
    pub max_terms: u32,
}

impl SurveyConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        SurveyConfig {
            samples,
            seed,
            shards: 1,
            opt_budget: DEFAULT_BUDGET,
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(LabError::Usage("samples must be at least 1".into()));
        }
        if self.shards == 0 {
            return Err(LabError::Usage("shards must be at least 1".into()));
        }
        if self.opt_budget == 0 {
            return Err(LabError::Usage("opt-budget must be at least 1".into()));
        }
        if !(1..=MAX_TERMS_LIMIT).contains(&self.max_terms) {
            return Err(LabError::Usage(format!(
                "max-terms must be in 1..={MAX_TERMS_LIMIT}"
            )));
        }
        Ok(())
    }

    /// Index range `[start, end)` of shard `k`.
    pub fn shard_range(&self, k: usize) -> (u64, u64) {
        let n = self.samples as u128;
        let s = self.shards as u128;
        let k = k as u128;
        ((k * n / s) as u64, ((k + 1) * n / s) as u64)
    }
}

fn run_shard(cfg: &SurveyConfig, k: usize) -> Result<Vec<SurveyRecord>> {
    let (start, end) = cfg.shard_range(k);
    (start..end)
        .map(|i| record_at(cfg.seed, i, cfg.max_terms, cfg.opt_budget).map_err(LabError::from))
        .collect()
}

/// Per-shard record blocks in shard order.
fn run_shards(cfg: &SurveyConfig) -> Result<Vec<Vec<SurveyRecord>>> {
    cfg.validate()?;
    let results: Vec<Result<Vec<SurveyRecord>>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..cfg.shards)
            .map(|k| s.spawn(move || run_shard(cfg, k)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("survey shard panicked"))
            .collect()
    });
    results
        .into_iter()
        .enumerate()
        .map(|(shard, r)| {
            r.map_err(|e| LabError::Shard {
                shard,
                source: Box::new(e),
            })
        })
        .collect()
}

/// All `samples` records in index order. The shard count only changes scheduling.
pub fn run_survey(cfg: &SurveyConfig) -> Result<Vec<SurveyRecord>> {
    Ok(run_shards(cfg)?.into_iter().flatten().collect())
}

/// Runs the survey, writes it to `path` and returns its summary. The file is created before
/// any work starts, so an unwritable path fails fast.
pub fn run_survey_to_csv(cfg: &SurveyConfig, path: &Path) -> Result<SurveySummary> {
    cfg.validate()?;
    let mut w = table::create(path)?;
    w.write_record(SURVEY_HEADER).map_err(LabError::csv(path))?;
    let shards = run_shards(cfg)?;
    for (shard, block) in shards.iter().enumerate() {
        for r in block {
            w.write_record(table::survey_row(r))
                .map_err(|e| LabError::Shard {
                    shard,
                    source: Box::new(LabError::csv(path)(e)),
                })?;
        }
    }
    table::finish(w, path)?;
    let records: Vec<SurveyRecord> = shards.into_iter().flatten().collect();
    Ok(summarize(&records)?)
}
