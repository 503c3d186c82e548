//! Magnet-angle optimization.
//!
//! Each objective is maximized over `(theta_a, phi_a, theta_b, phi_b)`: a 12×12×12×12
//! grid is screened, the five best grid points seed Nelder–Mead refinements, and the
//! result is the lexicographically smallest angle tuple among refined optima within
//! [`TIE_TOL`] of the best one.
//!
//! Grid screening for the distance objectives uses [`linalg::trace_norm_traceless`] and
//! precomputed single-spin conjugations; every value reported back is evaluated exactly.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::dynamics::{self, BlochDirection, MagnetConfig, TimeGrid};
use crate::linalg::{self, Mat2, Mat4, C64};
use crate::math;
use crate::simplex::NelderMead;
use crate::states::DensityMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    /// Short-time decay rate `1 / tau^2`.
    Kickoff,
    /// `D(pi/4) - D(pi/2)`.
    PeriodDdif,
    /// Largest trace distance over the default time grid.
    MaxDistance,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Kickoff => "kickoff",
            Objective::PeriodDdif => "period_ddif",
            Objective::MaxDistance => "max_distance",
        }
    }
}

pub fn evaluate_objective(rho: &DensityMatrix, config: &MagnetConfig, objective: Objective) -> f64 {
    match objective {
        Objective::Kickoff => dynamics::kickoff(rho, config).rate,
        Objective::PeriodDdif => dynamics::d_dif(rho, config),
        Objective::MaxDistance => {
            let ev = dynamics::Evolver::new(config);
            TimeGrid::default()
                .times()
                .map(|t| ev.distance(rho, t))
                .fold(0.0, f64::max)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimizationResult {
    pub config: MagnetConfig,
    pub value: f64,
    /// Objective evaluations spent, screening included.
    pub evaluations: usize,
}

pub const GRID_THETA: usize = 12;
pub const GRID_PHI: usize = 12;
pub const SEEDS: usize = 5;
/// Optima closer than this to the best value are treated as ties.
pub const TIE_TOL: f64 = 1e-6;
pub const DEFAULT_BUDGET: usize = 200;

/// Grid directions in lexicographic `(theta, phi)` order. At the poles every `phi` names
/// the same direction, so only `phi = 0` is kept there.
pub fn grid_directions() -> Vec<BlochDirection> {
    let mut dirs = Vec::with_capacity(GRID_THETA * GRID_PHI);
    for i in 0..GRID_THETA {
        let theta = PI * i as f64 / (GRID_THETA - 1) as f64;
        let pole = i == 0 || i == GRID_THETA - 1;
        for j in 0..GRID_PHI {
            if pole && j > 0 {
                break;
            }
            let phi = 2.0 * PI * j as f64 / GRID_PHI as f64;
            dirs.push(BlochDirection::new(theta, phi).expect("grid angle in range"));
        }
    }
    dirs
}

fn lex_cmp(a: &[f64; 4], b: &[f64; 4]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// Best `SEEDS` entries by value, earlier grid index first on ties.
struct TopK {
    items: Vec<(f64, usize)>,
}

impl TopK {
    fn new() -> Self {
        TopK {
            items: Vec::with_capacity(SEEDS + 1),
        }
    }

    fn offer(&mut self, value: f64, index: usize) {
        let ahead = |&(v, i): &(f64, usize)| value > v || (value == v && index < i);
        if self.items.len() == SEEDS && !ahead(&self.items[SEEDS - 1]) {
            return;
        }
        let pos = self.items.iter().position(ahead).unwrap_or(self.items.len());
        self.items.insert(pos, (value, index));
        self.items.truncate(SEEDS);
    }
}

fn local_op(dir: &BlochDirection, t: f64) -> Mat2 {
    Mat2::identity().scale_real(math::cos(t)) - dir.spin_operator().scale(C64::new(0.0, math::sin(t)))
}

/// `anti[i]` is the grid index of the direction opposite to `dirs[i]`.
fn antipodes(dirs: &[BlochDirection]) -> Vec<usize> {
    dirs.iter()
        .map(|d| {
            let u = d.unit_vector();
            let gap = |e: &BlochDirection| {
                let v = e.unit_vector();
                (0..3).map(|k| (u[k] + v[k]).abs()).fold(0.0, f64::max)
            };
            (0..dirs.len())
                .min_by(|&i, &j| gap(&dirs[i]).total_cmp(&gap(&dirs[j])))
                .expect("non-empty grid")
        })
        .collect()
}

/// Screening values for every `(a, b)` pair of grid directions.
fn screen(rho: &DensityMatrix, dirs: &[BlochDirection], objective: Objective, mut sink: impl FnMut(f64, usize)) {
    let n = dirs.len();
    let r = rho.mat();
    // Every objective is unchanged by (n_a, n_b) -> (-n_a, -n_b) and the grid is closed under
    // antipodes, so only rows with ia < anti[ia] are computed and each value is sent twice.
    let anti = antipodes(dirs);
    let rows: Vec<usize> = (0..n).filter(|&ia| ia < anti[ia]).collect();
    let mut sink = |v: f64, ia: usize, ib: usize| {
        sink(v, ia * n + ib);
        sink(v, anti[ia] * n + anti[ib]);
    };
    let half_norm = |m: &Mat4| 0.5 * linalg::trace_norm_traceless(m);
    match objective {
        Objective::Kickoff => {
            for &ia in &rows {
                for (ib, db) in dirs.iter().enumerate() {
                    let h = dynamics::hamiltonian(&MagnetConfig::new(dirs[ia], *db));
                    sink(dynamics::kickoff_rate(r, &h), ia, ib);
                }
            }
        }
        Objective::PeriodDdif => {
            let bases: Vec<Mat2> = dirs.iter().map(|d| d.eigenbasis().adjoint()).collect();
            for &ia in &rows {
                let ra = linalg::conjugate_local_a(r, &bases[ia]);
                for ib in 0..n {
                    let rp = linalg::conjugate_local_b(&ra, &bases[ib]);
                    let dq = half_norm(&dynamics::quarter_difference(&rp));
                    sink(dq - dynamics::half_period_distance(&rp), ia, ib);
                }
            }
        }
        Objective::MaxDistance => {
            // D(pi - t) = D(t), so the first half of the grid carries the maximum
            let grid = TimeGrid::default();
            let times: Vec<f64> = (0..=(grid.points - 1) / 2).map(|k| grid.time(k)).collect();
            let ops: Vec<Vec<Mat2>> = dirs
                .iter()
                .map(|d| times.iter().map(|&t| local_op(d, t)).collect())
                .collect();
            let mut conj_a: Vec<Mat4> = Vec::with_capacity(times.len());
            for &ia in &rows {
                conj_a.clear();
                conj_a.extend(ops[ia].iter().map(|u| linalg::conjugate_local_a(r, u)));
                for ib in 0..n {
                    let mut best = 0.0_f64;
                    for (k, ca) in conj_a.iter().enumerate() {
                        best = best.max(half_norm(&(*r - linalg::conjugate_local_b(ca, &ops[ib][k]))));
                    }
                    sink(best.min(1.0), ia, ib);
                }
            }
        }
    }
}

/// Screening values over all pairs of [`grid_directions`], pair `(a, b)` at `a * n + b`.
///
/// The distance objectives are screened with [`linalg::trace_norm_traceless`], and
/// `MaxDistance` only on the first half of the time grid, so values can differ from
/// [`evaluate_objective`] by about `1e-8`.
pub fn grid_values(rho: &DensityMatrix, objective: Objective) -> Vec<f64> {
    let dirs = grid_directions();
    let mut out = alloc::vec![0.0; dirs.len() * dirs.len()];
    screen(rho, &dirs, objective, |v, i| out[i] = v);
    out
}

/// Maximizes `objective` over magnet angles; `budget` caps evaluations per refinement.
pub fn optimize_angles(rho: &DensityMatrix, objective: Objective, budget: usize) -> OptimizationResult {
    let dirs = grid_directions();
    let n = dirs.len();
    let mut top = TopK::new();
    screen(rho, &dirs, objective, |v, i| top.offer(v, i));
    let mut evaluations = n * n;

    let nm = NelderMead {
        max_evals: budget.max(1),
        ..NelderMead::default()
    };
    let steps = [
        0.5 * PI / (GRID_THETA - 1) as f64,
        PI / GRID_PHI as f64,
        0.5 * PI / (GRID_THETA - 1) as f64,
        PI / GRID_PHI as f64,
    ];
    let to_config = |x: &[f64; 4]| {
        MagnetConfig::new(
            BlochDirection::folded(x[0], x[1]),
            BlochDirection::folded(x[2], x[3]),
        )
    };

    let mut candidates: Vec<(MagnetConfig, f64)> = Vec::with_capacity(SEEDS);
    for &(_, index) in &top.items {
        let seed = MagnetConfig::new(dirs[index / n], dirs[index % n]);
        let m = nm.minimize::<4, 5>(
            |x| -evaluate_objective(rho, &to_config(x), objective),
            seed.angles(),
            steps,
        );
        evaluations += m.evals;
        candidates.push((to_config(&m.x), -m.value));
    }

    let best = candidates
        .iter()
        .map(|c| c.1)
        .fold(f64::NEG_INFINITY, f64::max);
    let (config, value) = candidates
        .into_iter()
        .filter(|c| c.1 >= best - TIE_TOL)
        .min_by(|a, b| lex_cmp(&a.0.angles(), &b.0.angles()))
        .expect("at least one seed");
    OptimizationResult {
        config,
        value,
        evaluations,
    }
}

/// Angle between the two field directions' unit vectors, as `n_a . n_b`.
pub fn field_alignment(config: &MagnetConfig) -> f64 {
    let a = config.dir_a.unit_vector();
    let b = config.dir_b.unit_vector();
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `true` when `theta` is within `tol` of the equator.
pub fn is_equatorial(dir: &BlochDirection, tol: f64) -> bool {
    (dir.theta() - FRAC_PI_2).abs() < tol
}
