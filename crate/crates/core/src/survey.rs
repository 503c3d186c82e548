//! Per-sample survey records and their summary statistics.

use alloc::vec::Vec;

use crate::angleopt::{optimize_angles, Objective};
use crate::dynamics;
use crate::error::{Error, Result};
use crate::math;
use crate::quantify;
use crate::states::{sample_separable, SeparableSample};

/// One separable state with angles optimized for `D(pi/4) - D(pi/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurveyRecord {
    pub seed: u64,
    pub index: u64,
    pub num_terms: u32,
    pub mutual_info: f64,
    pub entropy_ab: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub d_quarter: f64,
    pub d_half: f64,
    pub d_dif: f64,
    pub theta_a: f64,
    pub phi_a: f64,
    pub theta_b: f64,
    pub phi_b: f64,
}

/// Upper bound on `D(pi/4)` for separable states.
pub const SEPARABLE_QUARTER_CEILING: f64 = 0.5;

pub fn survey_record(sample: &SeparableSample, opt_budget: usize) -> Result<SurveyRecord> {
    let rho = &sample.state;
    let opt = optimize_angles(rho, Objective::PeriodDdif, opt_budget);
    if !opt.value.is_finite() {
        return Err(Error::NonFiniteObjective {
            index: sample.index,
        });
    }
    let (d_quarter, d_half) = dynamics::quarter_and_half(rho, &opt.config);
    let report = quantify::measure_report(rho);
    let [theta_a, phi_a, theta_b, phi_b] = opt.config.angles();
    Ok(SurveyRecord {
        seed: sample.seed,
        index: sample.index,
        num_terms: sample.num_terms,
        mutual_info: report.mutual_info,
        entropy_ab: report.entropy_ab,
        entropy_a: report.entropy_a,
        entropy_b: report.entropy_b,
        d_quarter,
        d_half,
        d_dif: d_quarter - d_half,
        theta_a,
        phi_a,
        theta_b,
        phi_b,
    })
}

/// Record `index` of the survey `(seed, max_terms, opt_budget)`, regenerable in isolation.
pub fn record_at(seed: u64, index: u64, max_terms: u32, opt_budget: usize) -> Result<SurveyRecord> {
    survey_record(&sample_separable(seed, index, max_terms)?, opt_budget)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurveySummary {
    pub count: usize,
    pub mean_x: f64,
    pub median_x: f64,
    pub std_x: f64,
    pub mean_y: f64,
    pub median_y: f64,
    pub std_y: f64,
    pub max_d_quarter: f64,
}

/// `(mean, lower median, population standard deviation)`.
fn stats(mut v: Vec<f64>) -> (f64, f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let var = v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / n;
    v.sort_by(f64::total_cmp);
    let median = v[(v.len() - 1) / 2];
    (mean, median, math::sqrt(var))
}

/// Statistics of mutual information (`x`) and `d_dif` (`y`).
pub fn summarize(records: &[SurveyRecord]) -> Result<SurveySummary> {
    if records.is_empty() {
        return Err(Error::Empty);
    }
    let (mean_x, median_x, std_x) = stats(records.iter().map(|r| r.mutual_info).collect());
    let (mean_y, median_y, std_y) = stats(records.iter().map(|r| r.d_dif).collect());
    let max_d_quarter = records
        .iter()
        .map(|r| r.d_quarter)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(SurveySummary {
        count: records.len(),
        mean_x,
        median_x,
        std_x,
        mean_y,
        median_y,
        std_y,
        max_d_quarter,
    })
}

/// Records whose `d_dif` is within `tol` of the largest one.
pub fn near_max_d_dif(records: &[SurveyRecord], tol: f64) -> Vec<&SurveyRecord> {
    let max = records
        .iter()
        .map(|r| r.d_dif)
        .fold(f64::NEG_INFINITY, f64::max);
    records.iter().filter(|r| r.d_dif >= max - tol).collect()
}
