//! Argument parsing and command dispatch for the `qspeed` binary.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qspeed_core::dynamics::{self, MagnetConfig, TimeGrid, DEFAULT_GRID_POINTS};
use qspeed_core::quantify;
use qspeed_core::states::{build_family, Family, FamilySpec, PureState};

use crate::error::{LabError, Result};
use crate::figures::{self, ProductMixtureMode, DISTANCE_HEADER, KICKOFF_HEADER, PRODUCT_MIXTURE_HEADER};
use crate::format::fmt_g;
use crate::survey::{run_survey_to_csv, SurveyConfig};
use crate::table::write_table;

/// Resolution of the numeric orthogonality-time scan behind `compute t-perp`.
pub const T_PERP_RESOLUTION: usize = 2000;

#[derive(Debug, Parser)]
#[command(name = "qspeed", version, about = "Evolution speed of two-qubit states in local magnetic fields")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Kickoff coefficient and energy moments across a family's mixing range.
    FigKickoff {
        #[arg(long)]
        family: Family,
        #[arg(long, default_value_t = 11)]
        x_steps: usize,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Trace-distance curves for chosen mixing parameters.
    FigDistance {
        #[arg(long)]
        family: Family,
        /// Comma-separated mixing parameters.
        #[arg(long = "x", value_delimiter = ',', required = true)]
        x_list: Vec<f64>,
        #[command(flatten)]
        config: ConfigArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance curves of a|11><11| + (1-a)|00><00|.
    FigProductMixture {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Comma-separated weights in [0, 1].
        #[arg(long = "a", value_delimiter = ',', required = true)]
        a_list: Vec<f64>,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Distance curves of all mixed families under fields z and -z.
    FigZaxis {
        #[arg(long, default_value_t = 11)]
        x_steps: usize,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Separable-state survey with angles optimized for D(pi/4) - D(pi/2).
    Survey {
        #[arg(long)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long, default_value_t = qspeed_core::angleopt::DEFAULT_BUDGET)]
        opt_budget: usize,
        #[arg(long, default_value_t = qspeed_core::states::DEFAULT_MAX_TERMS)]
        max_terms: u32,
        #[arg(long)]
        out: PathBuf,
    },
    /// One quantity for one state.
    Compute {
        #[arg(value_enum)]
        quantity: Quantity,
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        config: ConfigArgs,
        /// Evolution time for `distance`, in radians.
        #[arg(long)]
        t: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Period,
    Distance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Concurrence,
    Entropy,
    MutualInfo,
    Kickoff,
    TPerp,
    Distance,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NamedConfig {
    /// Both fields along x.
    Xx,
    /// z on the first spin, -z on the second.
    #[value(name = "z-z")]
    ZMinusZ,
    /// Both fields along z.
    Zz,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    /// Named field configuration.
    #[arg(long, value_enum, conflicts_with_all = ["theta_a", "phi_a", "theta_b", "phi_b"])]
    pub config: Option<NamedConfig>,
    #[arg(long, requires_all = ["phi_a", "theta_b", "phi_b"])]
    pub theta_a: Option<f64>,
    #[arg(long, requires_all = ["theta_a", "theta_b", "phi_b"])]
    pub phi_a: Option<f64>,
    #[arg(long, requires_all = ["theta_a", "phi_a", "phi_b"])]
    pub theta_b: Option<f64>,
    #[arg(long, requires_all = ["theta_a", "phi_a", "theta_b"])]
    pub phi_b: Option<f64>,
}

impl ConfigArgs {
    /// The selected configuration, `(x, x)` when none is given.
    pub fn resolve(&self) -> Result<MagnetConfig> {
        if let (Some(ta), Some(pa), Some(tb), Some(pb)) = (self.theta_a, self.phi_a, self.theta_b, self.phi_b) {
            return Ok(MagnetConfig::from_angles(ta, pa, tb, pb)?);
        }
        Ok(match self.config.unwrap_or(NamedConfig::Xx) {
            NamedConfig::Xx => MagnetConfig::XX,
            NamedConfig::ZMinusZ => MagnetConfig::Z_MINUS_Z,
            NamedConfig::Zz => MagnetConfig::ZZ,
        })
    }
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// End of the time grid, in radians.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub t_max: f64,
    #[arg(long, default_value_t = DEFAULT_GRID_POINTS)]
    pub points: usize,
}

impl GridArgs {
    pub fn resolve(&self) -> Result<TimeGrid> {
        Ok(TimeGrid::new(0.0, self.t_max, self.points)?)
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[arg(long, conflicts_with_all = ["alpha", "gamma"], requires = "x")]
    pub family: Option<Family>,
    /// Mixing parameter of `--family`.
    #[arg(long, requires = "family")]
    pub x: Option<f64>,
    /// Amplitude of |11> in alpha|11> + beta|00>.
    #[arg(long, conflicts_with = "gamma")]
    pub alpha: Option<f64>,
    /// Angle of cos(g)|10> - sin(g)|01>.
    #[arg(long)]
    pub gamma: Option<f64>,
}

impl StateArgs {
    pub fn spec(&self) -> Result<FamilySpec> {
        let (family, param) = match (self.family, self.x, self.alpha, self.gamma) {
            (Some(f), Some(x), None, None) => (f, x),
            (None, None, Some(a), None) => (Family::PurePhi, a),
            (None, None, None, Some(g)) => (Family::PureEnt, g),
            _ => {
                return Err(LabError::Usage(
                    "give a state as --family NAME --x VALUE, --alpha VALUE or --gamma VALUE".into(),
                ))
            }
        };
        Ok(FamilySpec::new(family, param)?)
    }
}

/// Parses `args` (program name first) and runs the command, printing to `out`.
pub fn run<I, T>(args: I, out: &mut impl Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| LabError::Usage(e.to_string()))?;
    execute(cli.command, out)
}

fn print_line(out: &mut impl Write, line: &str) -> Result<()> {
    writeln!(out, "{line}").map_err(LabError::io("<stdout>"))
}

pub fn execute(command: Command, out: &mut impl Write) -> Result<()> {
    match command {
        Command::FigKickoff { family, x_steps, config, out: path } => {
            let config = config.resolve()?;
            let rows = figures::kickoff_rows(family, x_steps, &config)?;
            write_table(&path, &KICKOFF_HEADER, rows.iter().map(|r| r.fields()))
        }
        Command::FigDistance { family, x_list, config, grid, out: path } => {
            let (config, grid) = (config.resolve()?, grid.resolve()?);
            let rows = figures::distance_rows(family, &x_list, &config, &grid)?;
            write_table(&path, &DISTANCE_HEADER, rows.iter().map(|r| r.fields()))
        }
        Command::FigProductMixture { mode, a_list, grid, out: path } => {
            let grid = grid.resolve()?;
            let mode = match mode {
                Mode::Period => ProductMixtureMode::Period,
                Mode::Distance => ProductMixtureMode::Distance,
            };
            let rows = figures::product_mixture_rows(mode, &a_list, &grid)?;
            write_table(&path, &PRODUCT_MIXTURE_HEADER, rows.iter().map(figures::product_mixture_fields))
        }
        Command::FigZaxis { x_steps, grid, out: path } => {
            let (xs, grid) = (figures::unit_steps(x_steps)?, grid.resolve()?);
            let rows = figures::zaxis_rows(&xs, &grid)?;
            write_table(&path, &DISTANCE_HEADER, rows.iter().map(|r| r.fields()))
        }
        Command::Survey { samples, seed, shards, opt_budget, max_terms, out: path } => {
            let cfg = SurveyConfig {
                samples,
                seed,
                shards,
                opt_budget,
                max_terms,
            };
            let s = run_survey_to_csv(&cfg, &path)?;
            let mut fields = vec![s.count.to_string()];
            fields.extend(
                [s.mean_x, s.median_x, s.std_x, s.mean_y, s.median_y, s.std_y, s.max_d_quarter].map(fmt_g),
            );
            print_line(out, &fields.join(", "))
        }
        Command::Compute { quantity, state, config, t } => {
            let spec = state.spec()?;
            let config = config.resolve()?;
            if quantity == Quantity::Distance && t.is_none() {
                return Err(LabError::Usage("distance needs --t".into()));
            }
            let line = compute(quantity, spec, &config, t)?;
            print_line(out, &line)
        }
    }
}

fn compute(quantity: Quantity, spec: FamilySpec, config: &MagnetConfig, t: Option<f64>) -> Result<String> {
    let rho = build_family(spec)?;
    let value = match quantity {
        Quantity::Concurrence => quantify::concurrence(&rho),
        Quantity::Entropy => quantify::entropy_vn(rho.mat())?,
        Quantity::MutualInfo => quantify::mutual_information(&rho),
        Quantity::Kickoff => dynamics::kickoff(&rho, config).rate,
        Quantity::Distance => {
            let t = t.expect("checked by the caller");
            dynamics::trace_distance(&rho, &dynamics::evolve(&rho, config, t))
        }
        Quantity::TPerp => {
            let psi = spec.pure_state()?.ok_or_else(|| {
                LabError::Usage(format!("t-perp needs a pure state, {} is mixed", spec.family))
            })?;
            return t_perp(spec, &psi, config);
        }
    };
    Ok(fmt_g(value))
}

/// Closed form for `alpha |11> + beta |00>` when its preconditions hold, numeric otherwise.
fn t_perp(spec: FamilySpec, psi: &PureState, config: &MagnetConfig) -> Result<String> {
    if spec.family == Family::PurePhi {
        if let Ok(t) = dynamics::t_perp_pure(spec.param, config) {
            return Ok(fmt_g(t));
        }
    }
    Ok(match dynamics::t_perp_numeric(psi, config, T_PERP_RESOLUTION)? {
        Some(t) => fmt_g(t),
        None => "never".into(),
    })
}
