//! Row builders for the figure datasets.

use qspeed_core::angleopt::{optimize_angles, Objective, DEFAULT_BUDGET};
use qspeed_core::dynamics::{self, distance_series, MagnetConfig, TimeGrid};
use qspeed_core::states::{build_family, Family, FamilySpec};

use crate::error::{LabError, Result};
use crate::format::fmt_g;

pub const KICKOFF_HEADER: [&str; 6] = ["family", "x", "tau_sq", "rate", "delta_e_mean", "delta_e_var"];
pub const DISTANCE_HEADER: [&str; 8] = ["family", "x", "theta_a", "phi_a", "theta_b", "phi_b", "t", "distance"];
pub const PRODUCT_MIXTURE_HEADER: [&str; 9] = [
    "a", "family", "x", "theta_a", "phi_a", "theta_b", "phi_b", "t", "distance",
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KickoffRow {
    pub family: Family,
    pub x: f64,
    /// `None` for stationary states.
    pub tau_sq: Option<f64>,
    pub rate: f64,
    pub delta_e_mean: f64,
    pub delta_e_var: f64,
}

impl KickoffRow {
    pub fn fields(&self) -> Vec<String> {
        vec![
            self.family.name().into(),
            fmt_g(self.x),
            self.tau_sq.map(fmt_g).unwrap_or_default(),
            fmt_g(self.rate),
            fmt_g(self.delta_e_mean),
            fmt_g(self.delta_e_var),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceRow {
    pub family: Family,
    pub x: f64,
    pub config: MagnetConfig,
    pub t: f64,
    pub distance: f64,
}

impl DistanceRow {
    pub fn fields(&self) -> Vec<String> {
        let mut f = vec![self.family.name().into(), fmt_g(self.x)];
        f.extend(self.config.angles().map(fmt_g));
        f.push(fmt_g(self.t));
        f.push(fmt_g(self.distance));
        f
    }
}

/// `steps` values spread uniformly over `[0, 1]`, both ends included.
pub fn unit_steps(steps: usize) -> Result<Vec<f64>> {
    if steps < 2 {
        return Err(LabError::Usage("x-steps must be at least 2".into()));
    }
    Ok((0..steps)
        .map(|k| if k + 1 == steps { 1.0 } else { k as f64 / (steps - 1) as f64 })
        .collect())
}

pub fn kickoff_rows(family: Family, x_steps: usize, config: &MagnetConfig) -> Result<Vec<KickoffRow>> {
    unit_steps(x_steps)?
        .into_iter()
        .map(|x| {
            let rho = build_family(FamilySpec::new(family, x)?)?;
            let k = dynamics::kickoff(&rho, config);
            let e = dynamics::energy_moments(&rho, config);
            Ok(KickoffRow {
                family,
                x,
                tau_sq: k.tau_sq,
                rate: if k.is_stationary() { 0.0 } else { k.rate },
                delta_e_mean: e.mean,
                delta_e_var: e.variance,
            })
        })
        .collect()
}

pub fn distance_rows(family: Family, xs: &[f64], config: &MagnetConfig, grid: &TimeGrid) -> Result<Vec<DistanceRow>> {
    if xs.is_empty() {
        return Err(LabError::Usage("at least one x value is required".into()));
    }
    let mut rows = Vec::with_capacity(xs.len() * grid.points);
    for &x in xs {
        let rho = build_family(FamilySpec::new(family, x)?)?;
        let series = distance_series(&rho, config, grid);
        rows.extend(series.times.iter().zip(&series.values).map(|(&t, &distance)| DistanceRow {
            family,
            x,
            config: *config,
            t,
            distance,
        }));
    }
    Ok(rows)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMixtureMode {
    /// Both fields along `x`.
    Period,
    /// Angles optimized for the largest distance on the default grid.
    Distance,
}

/// Distance curves of `a |11><11| + (1 - a) |00><00|`, one block per `a`.
pub fn product_mixture_rows(mode: ProductMixtureMode, a_list: &[f64], grid: &TimeGrid) -> Result<Vec<DistanceRow>> {
    if a_list.is_empty() {
        return Err(LabError::Usage("at least one a value is required".into()));
    }
    let mut rows = Vec::new();
    for &a in a_list {
        let family = Family::ProductMixture;
        let config = match mode {
            ProductMixtureMode::Period => MagnetConfig::XX,
            ProductMixtureMode::Distance => {
                let rho = build_family(FamilySpec::new(family, a)?)?;
                optimize_angles(&rho, Objective::MaxDistance, DEFAULT_BUDGET).config
            }
        };
        rows.extend(distance_rows(family, &[a], &config, grid)?);
    }
    Ok(rows)
}

/// Product-mixture rows carry their mixing weight first.
pub fn product_mixture_fields(row: &DistanceRow) -> Vec<String> {
    let mut f = vec![fmt_g(row.x)];
    f.extend(row.fields());
    f
}

/// The three Bell mixtures and the product mixture under `(z, -z)`, for each `x`.
pub fn zaxis_rows(xs: &[f64], grid: &TimeGrid) -> Result<Vec<DistanceRow>> {
    let mut rows = Vec::new();
    for family in Family::MIXED_BELL.into_iter().chain([Family::ProductMixture]) {
        rows.extend(distance_rows(family, xs, &MagnetConfig::Z_MINUS_Z, grid)?);
    }
    Ok(rows)
}
