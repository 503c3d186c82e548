//! Two spins, each precessing about its own field direction.
//!
//! The Hamiltonian is `H = (sigma . n_a) ⊗ I + I ⊗ (sigma . n_b)` with unit fields and
//! `hbar = 1`, so time is measured in radians of precession. Evolution uses the closed
//! form `u(t) = cos t I - i sin t (sigma . n)` on each spin.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::linalg::{self, kron, Mat, Mat2, Mat4, C64};
use crate::math;
use crate::states::{DensityMatrix, PureState};

/// Field direction on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochDirection {
    theta: f64,
    phi: f64,
}

impl BlochDirection {
    pub const X: BlochDirection = BlochDirection {
        theta: FRAC_PI_2,
        phi: 0.0,
    };
    pub const Y: BlochDirection = BlochDirection {
        theta: FRAC_PI_2,
        phi: FRAC_PI_2,
    };
    pub const Z: BlochDirection = BlochDirection {
        theta: 0.0,
        phi: 0.0,
    };
    pub const MINUS_Z: BlochDirection = BlochDirection {
        theta: PI,
        phi: 0.0,
    };

    /// `theta` in `[0, pi]`, `phi` in `[0, 2 pi)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) {
            return Err(Error::OutOfRange {
                name: "theta",
                value: theta,
            });
        }
        if !(0.0..2.0 * PI).contains(&phi) {
            return Err(Error::OutOfRange {
                name: "phi",
                value: phi,
            });
        }
        Ok(BlochDirection { theta, phi })
    }

    /// Maps arbitrary real angles into range: `phi` wraps, `theta` reflects at the poles.
    pub fn folded(theta: f64, phi: f64) -> Self {
        let t = math::wrap(theta, 2.0 * PI);
        let theta = if t > PI { 2.0 * PI - t } else { t };
        BlochDirection {
            theta,
            phi: math::wrap(phi, 2.0 * PI),
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let s = math::sin(self.theta);
        [
            s * math::cos(self.phi),
            s * math::sin(self.phi),
            math::cos(self.theta),
        ]
    }

    /// `sigma . n`.
    pub fn spin_operator(&self) -> Mat2 {
        linalg::pauli_dot(self.unit_vector())
    }

    /// Unitary whose columns are the `+1` and `-1` eigenvectors of `sigma . n`.
    pub fn eigenbasis(&self) -> Mat2 {
        let (c, s) = (math::cos(0.5 * self.theta), math::sin(0.5 * self.theta));
        let e = C64::new(math::cos(self.phi), math::sin(self.phi));
        Mat([[C64::new(c, 0.0), -e.conj() * s], [e * s, C64::new(c, 0.0)]])
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MagnetConfig {
    pub dir_a: BlochDirection,
    pub dir_b: BlochDirection,
}

impl MagnetConfig {
    /// Both fields along `x`.
    pub const XX: MagnetConfig = MagnetConfig {
        dir_a: BlochDirection::X,
        dir_b: BlochDirection::X,
    };
    /// `z` on the first spin, `-z` on the second.
    pub const Z_MINUS_Z: MagnetConfig = MagnetConfig {
        dir_a: BlochDirection::Z,
        dir_b: BlochDirection::MINUS_Z,
    };
    pub const ZZ: MagnetConfig = MagnetConfig {
        dir_a: BlochDirection::Z,
        dir_b: BlochDirection::Z,
    };

    pub fn new(dir_a: BlochDirection, dir_b: BlochDirection) -> Self {
        MagnetConfig { dir_a, dir_b }
    }

    pub fn from_angles(theta_a: f64, phi_a: f64, theta_b: f64, phi_b: f64) -> Result<Self> {
        Ok(MagnetConfig {
            dir_a: BlochDirection::new(theta_a, phi_a)?,
            dir_b: BlochDirection::new(theta_b, phi_b)?,
        })
    }

    /// `(theta_a, phi_a, theta_b, phi_b)`.
    pub fn angles(&self) -> [f64; 4] {
        [
            self.dir_a.theta,
            self.dir_a.phi,
            self.dir_b.theta,
            self.dir_b.phi,
        ]
    }
}

pub fn hamiltonian(config: &MagnetConfig) -> Mat4 {
    let id = Mat2::identity();
    kron(&config.dir_a.spin_operator(), &id) + kron(&id, &config.dir_b.spin_operator())
}

fn single_from_operator(op: &Mat2, t: f64) -> Mat2 {
    Mat2::identity().scale_real(math::cos(t)) - op.scale(C64::new(0.0, math::sin(t)))
}

/// `u(t) = cos t I - i sin t (sigma . n)`.
pub fn propagator_single(dir: &BlochDirection, t: f64) -> Mat2 {
    single_from_operator(&dir.spin_operator(), t)
}

pub fn propagator(config: &MagnetConfig, t: f64) -> Mat4 {
    kron(
        &propagator_single(&config.dir_a, t),
        &propagator_single(&config.dir_b, t),
    )
}

/// Precomputed spin operators for repeated evolution under one configuration.
#[derive(Clone, Copy, Debug)]
pub struct Evolver {
    op_a: Mat2,
    op_b: Mat2,
}

impl Evolver {
    pub fn new(config: &MagnetConfig) -> Self {
        Evolver {
            op_a: config.dir_a.spin_operator(),
            op_b: config.dir_b.spin_operator(),
        }
    }

    pub fn evolve_mat(&self, rho: &Mat4, t: f64) -> Mat4 {
        let ua = single_from_operator(&self.op_a, t);
        let ub = single_from_operator(&self.op_b, t);
        linalg::conjugate_local_b(&linalg::conjugate_local_a(rho, &ua), &ub)
    }

    pub fn distance(&self, rho0: &DensityMatrix, t: f64) -> f64 {
        distance_mats(rho0.mat(), &self.evolve_mat(rho0.mat(), t))
    }
}

/// `rho(t) = U rho U^dagger` with `U = u_a(t) ⊗ u_b(t)`.
pub fn evolve(rho0: &DensityMatrix, config: &MagnetConfig, t: f64) -> DensityMatrix {
    DensityMatrix::new_unchecked(Evolver::new(config).evolve_mat(rho0.mat(), t))
}

fn distance_mats(a: &Mat4, b: &Mat4) -> f64 {
    (0.5 * linalg::trace_norm4(&(*a - *b))).clamp(0.0, 1.0)
}

/// `D = tr|rho - sigma| / 2`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> f64 {
    distance_mats(rho.mat(), sigma.mat())
}

/// `tr(rho0 U rho0 U^dagger) / tr(rho0^2)`.
pub fn fidelity(rho0: &DensityMatrix, config: &MagnetConfig, t: f64) -> f64 {
    let purity = rho0.purity().max(1e-12);
    let rt = Evolver::new(config).evolve_mat(rho0.mat(), t);
    rho0.mat().trace_of_product(&rt).re / purity
}

/// Short-time decay of [`fidelity`], `F ≈ exp(-rate t^2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KickoffResult {
    /// `1 / tau^2`, never negative.
    pub rate: f64,
    /// `None` when the state is stationary (`rate` within 1e-12 of zero).
    pub tau_sq: Option<f64>,
}

impl KickoffResult {
    pub fn is_stationary(&self) -> bool {
        self.tau_sq.is_none()
    }
}

pub const STATIONARY_TOL: f64 = 1e-12;

/// Kickoff rate alone, `(tr(rho^2 H^2) - tr(rho H rho H)) / tr(rho^2)`.
pub fn kickoff_rate(rho: &Mat4, h: &Mat4) -> f64 {
    let rh = *rho * *h;
    let hr = *h * *rho;
    // tr(rho rho H H) = tr((H rho)(rho H)), tr(rho H rho H) = tr((rho H)(rho H))
    let a = hr.trace_of_product(&rh).re;
    let b = rh.trace_of_product(&rh).re;
    let purity = rho.trace_of_product(rho).re.max(1e-12);
    ((a - b) / purity).max(0.0)
}

pub fn kickoff(rho: &DensityMatrix, config: &MagnetConfig) -> KickoffResult {
    let rate = kickoff_rate(rho.mat(), &hamiltonian(config));
    let tau_sq = if rate <= STATIONARY_TOL {
        None
    } else {
        Some(1.0 / rate)
    };
    KickoffResult { rate, tau_sq }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyMoments {
    /// `tr(rho H)`.
    pub mean: f64,
    /// `tr(rho H^2) - mean^2`, clamped at zero.
    pub variance: f64,
}

pub fn energy_moments(rho: &DensityMatrix, config: &MagnetConfig) -> EnergyMoments {
    let h = hamiltonian(config);
    let mean = rho.mat().trace_of_product(&h).re;
    let second = rho.mat().trace_of_product(&(h * h)).re;
    EnergyMoments {
        mean,
        variance: (second - mean * mean).max(0.0),
    }
}

fn expectation4(psi: &PureState, op: &Mat4) -> C64 {
    linalg::inner(psi.amps(), &op.apply(psi.amps()))
}

/// Tolerance on the vanishing single-spin expectations required by [`t_perp_pure`].
pub const T_PERP_CONSTRAINT_TOL: f64 = 1e-10;

/// Orthogonality time of `alpha |11> + beta |00>` from the two-spin correlator,
/// `t = arccot sqrt(<(sigma . n_a)(sigma . n_b)>)`.
///
/// Valid only when both single-spin expectations vanish (the imaginary part of the
/// overlap is then zero for all `t`) and the correlator is non-negative.
pub fn t_perp_pure(alpha: f64, config: &MagnetConfig) -> Result<f64> {
    let psi = PureState::phi_family(alpha)?;
    let id = Mat2::identity();
    let sa = config.dir_a.spin_operator();
    let sb = config.dir_b.spin_operator();
    let ea = expectation4(&psi, &kron(&sa, &id)).re;
    let eb = expectation4(&psi, &kron(&id, &sb)).re;
    if ea.abs() > T_PERP_CONSTRAINT_TOL {
        return Err(Error::Precondition("<sigma . n_a> must vanish"));
    }
    if eb.abs() > T_PERP_CONSTRAINT_TOL {
        return Err(Error::Precondition("<sigma . n_b> must vanish"));
    }
    let corr = expectation4(&psi, &kron(&sa, &sb)).re;
    if corr < -T_PERP_CONSTRAINT_TOL {
        return Err(Error::Precondition(
            "<(sigma . n_a)(sigma . n_b)> must be non-negative",
        ));
    }
    let root = math::sqrt(corr.max(0.0));
    // arccot r = pi/2 - arctan r, continuous through r = 0
    Ok(FRAC_PI_2 - math::atan(root))
}

/// Overlap modulus below which a refined point counts as orthogonal.
pub const ORTHOGONAL_TOL: f64 = 1e-8;

/// First orthogonality time in `(0, pi]` found numerically, or `None` if the state never
/// becomes orthogonal to itself.
///
/// Scans `resolution` uniform steps for local minima of `|<psi|U(t)|psi>|` and refines
/// each bracket by golden-section search, earliest first.
pub fn t_perp_numeric(psi: &PureState, config: &MagnetConfig, resolution: usize) -> Result<Option<f64>> {
    if resolution < 100 {
        return Err(Error::OutOfRange {
            name: "resolution",
            value: resolution as f64,
        });
    }
    let sa = config.dir_a.spin_operator();
    let sb = config.dir_b.spin_operator();
    let overlap = |t: f64| {
        let u = kron(&single_from_operator(&sa, t), &single_from_operator(&sb, t));
        expectation4(psi, &u).norm()
    };
    let step = PI / resolution as f64;
    let vals: Vec<f64> = (0..=resolution + 1).map(|k| overlap(k as f64 * step)).collect();
    for k in 1..=resolution {
        let (prev, here, next) = (vals[k - 1], vals[k], vals[k + 1]);
        if !(here <= prev && here <= next) {
            continue;
        }
        if here < ORTHOGONAL_TOL {
            return Ok(Some(k as f64 * step));
        }
        let (t, v) = golden_min(&overlap, (k - 1) as f64 * step, (k + 1) as f64 * step);
        if v < ORTHOGONAL_TOL && t <= PI {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let g = 0.5 * (math::sqrt(5.0) - 1.0);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() < 1e-15 {
            break;
        }
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if fc < fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Uniform time grid, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

pub const DEFAULT_GRID_POINTS: usize = 721;

impl Default for TimeGrid {
    /// 721 points on `[0, pi]`, so `pi/4` and `pi/2` are grid points.
    fn default() -> Self {
        TimeGrid {
            start: 0.0,
            end: PI,
            points: DEFAULT_GRID_POINTS,
        }
    }
}

impl TimeGrid {
    pub fn new(start: f64, end: f64, points: usize) -> Result<Self> {
        if points < 2 {
            return Err(Error::OutOfRange {
                name: "points",
                value: points as f64,
            });
        }
        if !(start.is_finite() && end.is_finite() && end > start) {
            return Err(Error::OutOfRange {
                name: "end",
                value: end,
            });
        }
        Ok(TimeGrid { start, end, points })
    }

    pub fn up_to(end: f64) -> Result<Self> {
        Self::new(0.0, end, DEFAULT_GRID_POINTS)
    }

    pub fn time(&self, k: usize) -> f64 {
        if k + 1 == self.points {
            return self.end;
        }
        self.start + (self.end - self.start) * k as f64 / (self.points - 1) as f64
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|k| self.time(k))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TimeSeries {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
}

impl TimeSeries {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `(t, value)` at the largest value; earliest on ties.
    pub fn argmax(&self) -> Option<(f64, f64)> {
        let mut best: Option<(f64, f64)> = None;
        for (&t, &v) in self.times.iter().zip(&self.values) {
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((t, v));
            }
        }
        best
    }
}

pub fn distance_series(rho0: &DensityMatrix, config: &MagnetConfig, grid: &TimeGrid) -> TimeSeries {
    let ev = Evolver::new(config);
    let times: Vec<f64> = grid.times().collect();
    let values = times.iter().map(|&t| ev.distance(rho0, t)).collect();
    TimeSeries { times, values }
}

/// `D(pi/4) - D(pi/2)`.
pub fn d_dif(rho0: &DensityMatrix, config: &MagnetConfig) -> f64 {
    let (q, h) = quarter_and_half(rho0, config);
    q - h
}

/// `(D(pi/4), D(pi/2))`.
pub fn quarter_and_half(rho0: &DensityMatrix, config: &MagnetConfig) -> (f64, f64) {
    let va = config.dir_a.eigenbasis().adjoint();
    let vb = config.dir_b.eigenbasis().adjoint();
    let rp = linalg::conjugate_local_b(&linalg::conjugate_local_a(rho0.mat(), &va), &vb);
    (
        (0.5 * linalg::trace_norm4(&quarter_difference(&rp))).clamp(0.0, 1.0),
        half_period_distance(&rp),
    )
}

// In the product eigenbasis |++>, |+->, |-+>, |--> of the two spin operators both
// propagators are diagonal: u(pi/4) ⊗ u(pi/4) = diag(-i, 1, 1, i) and u(pi/2) ⊗ u(pi/2)
// = -diag(1, -1, -1, 1). The functions below take rho0 already rotated into that basis.

/// `rho0 - U(pi/4) rho0 U(pi/4)^dagger`, elementwise `(1 - u_j conj(u_k)) rho_jk`.
pub(crate) fn quarter_difference(rp: &Mat4) -> Mat4 {
    const U: [C64; 4] = [
        C64::new(0.0, -1.0),
        C64::new(1.0, 0.0),
        C64::new(1.0, 0.0),
        C64::new(0.0, 1.0),
    ];
    Mat(core::array::from_fn(|j| {
        core::array::from_fn(|k| (C64::new(1.0, 0.0) - U[j] * U[k].conj()) * rp.0[j][k])
    }))
}

/// `D(pi/2)`. The difference `rho0 - W rho0 W` with `W = diag(1, -1, -1, 1)` is twice the
/// off-diagonal block `Q` of `rho0` between the `W = +1` and `W = -1` subspaces, so its
/// eigenvalues are `±2 s_i(Q)` and `D = 2 (s_1 + s_2) = 2 sqrt(||Q||_F^2 + 2 |det Q|)`.
pub(crate) fn half_period_distance(rp: &Mat4) -> f64 {
    let m = &rp.0;
    let q = [[m[0][1], m[0][2]], [m[3][1], m[3][2]]];
    let fro = q.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>();
    let det = (q[0][0] * q[1][1] - q[0][1] * q[1][0]).norm();
    (2.0 * math::sqrt(fro + 2.0 * det)).min(1.0)
}
