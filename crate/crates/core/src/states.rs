//! Two-qubit states: validated density matrices, the named mixing families and the
//! separable-state sampler.

use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::{self, kron, Mat2, Mat4, Subsystem, C64, ONE, ZERO};
use crate::math;
use crate::rng::SampleRng;

/// Tolerance for the Hermitian and unit-trace checks on [`DensityMatrix`].
pub const STATE_TOL: f64 = 1e-10;

/// A two-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix(Mat4);

impl DensityMatrix {
    pub fn new(mat: Mat4) -> Result<Self> {
        if !mat.is_finite() {
            return Err(Error::NonFinite);
        }
        let dev = mat.hermiticity_error();
        if dev > STATE_TOL {
            return Err(Error::NotHermitian { deviation: dev });
        }
        let tr = mat.trace();
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::BadTrace { trace: tr.re });
        }
        let min = linalg::eigenvalues_hermitian(&mat)[0];
        if min < -linalg::PSD_TOL {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
            });
        }
        Ok(DensityMatrix(mat))
    }

    /// Wraps a matrix already known to be a state, e.g. a unitary image of one.
    pub(crate) fn new_unchecked(mat: Mat4) -> Self {
        DensityMatrix(mat)
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix(Mat4::identity().scale_real(0.25))
    }

    pub fn from_pure(psi: &PureState) -> Self {
        DensityMatrix(Mat4::outer(&psi.0, &psi.0))
    }

    /// `|i><i|` for a computational basis index (`0..4`, `|00>..|11>`).
    pub fn basis(index: usize) -> Self {
        Self::from_pure(&PureState::basis(index))
    }

    pub fn mat(&self) -> &Mat4 {
        &self.0
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        linalg::eigenvalues_hermitian(&self.0)
    }

    pub fn purity(&self) -> f64 {
        self.0.trace_of_product(&self.0).re
    }

    pub fn reduced(&self, keep: Subsystem) -> Mat2 {
        let traced = match keep {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        };
        linalg::partial_trace(&self.0, traced)
    }

    /// Convex mixture `sum w_k rho_k`; weights are assumed non-negative and normalized.
    pub fn mixture(terms: &[(f64, DensityMatrix)]) -> Self {
        let mut m = Mat4::zeros();
        for (w, rho) in terms {
            m = m + rho.0.scale_real(*w);
        }
        DensityMatrix(m)
    }
}

/// A normalized two-qubit state vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PureState([C64; 4]);

pub const NORM_TOL: f64 = 1e-12;

impl PureState {
    pub fn new(amps: [C64; 4]) -> Result<Self> {
        let norm = math::sqrt(amps.iter().map(|z| z.norm_sqr()).sum());
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::BadNorm { norm });
        }
        Ok(PureState(amps))
    }

    /// Rescales a non-zero vector to unit norm.
    pub fn normalized(amps: [C64; 4]) -> Result<Self> {
        let norm = math::sqrt(amps.iter().map(|z| z.norm_sqr()).sum());
        if !(norm > 1e-300) || !norm.is_finite() {
            return Err(Error::BadNorm { norm });
        }
        Ok(PureState(amps.map(|z| z / norm)))
    }

    pub fn basis(index: usize) -> Self {
        let mut amps = [ZERO; 4];
        amps[index] = ONE;
        PureState(amps)
    }

    pub fn product(a: [C64; 2], b: [C64; 2]) -> Result<Self> {
        Self::normalized(linalg::kron_vec(&a, &b))
    }

    pub fn amps(&self) -> &[C64; 4] {
        &self.0
    }

    /// `alpha |11> + beta |00>` with `beta = sqrt(1 - alpha^2)` (spin up is `|1>`).
    pub fn phi_family(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(Error::ParamOutOfRange {
                family: "pure_phi",
                value: alpha,
            });
        }
        let beta = math::sqrt((1.0 - alpha * alpha).max(0.0));
        Ok(PureState([
            C64::new(beta, 0.0),
            ZERO,
            ZERO,
            C64::new(alpha, 0.0),
        ]))
    }

    /// `cos(gamma) |10> - sin(gamma) |01>`.
    pub fn ent_family(gamma: f64) -> Result<Self> {
        if !(0.0..=FRAC_PI_2).contains(&gamma) {
            return Err(Error::ParamOutOfRange {
                family: "pure_ent",
                value: gamma,
            });
        }
        Ok(PureState([
            ZERO,
            C64::new(-math::sin(gamma), 0.0),
            C64::new(math::cos(gamma), 0.0),
            ZERO,
        ]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BellKind {
    PhiPlus,
    PhiMinus,
    PsiPlus,
    /// The singlet.
    PsiMinus,
}

impl BellKind {
    pub const ALL: [BellKind; 4] = [
        BellKind::PhiPlus,
        BellKind::PhiMinus,
        BellKind::PsiPlus,
        BellKind::PsiMinus,
    ];
}

/// `Phi± = (|00> ± |11>)/√2`, `Psi± = (|01> ± |10>)/√2`.
pub fn bell_state(kind: BellKind) -> PureState {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let amps = match kind {
        BellKind::PhiPlus => [h, ZERO, ZERO, h],
        BellKind::PhiMinus => [h, ZERO, ZERO, -h],
        BellKind::PsiPlus => [ZERO, h, h, ZERO],
        BellKind::PsiMinus => [ZERO, h, -h, ZERO],
    };
    PureState(amps)
}

/// The named parametric families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `(1-x)/4 I + x |Psi+><Psi+|`
    Werner,
    /// `(1-x)/2 (|00><00| + |11><11|) + x |Psi+><Psi+|`
    Gisin,
    /// `(1-x) |00><00| + x |Psi+><Psi+|`
    Rho3,
    /// `a |11><11| + (1-a) |00><00|`
    ProductMixture,
    /// `alpha |11> + beta |00>`, param is `alpha`
    PurePhi,
    /// `cos g |10> - sin g |01>`, param is the angle `g`
    PureEnt,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Werner,
        Family::Gisin,
        Family::Rho3,
        Family::ProductMixture,
        Family::PurePhi,
        Family::PureEnt,
    ];

    /// The three mixtures of `Psi+` with separable states.
    pub const MIXED_BELL: [Family; 3] = [Family::Werner, Family::Gisin, Family::Rho3];

    pub fn name(self) -> &'static str {
        match self {
            Family::Werner => "werner",
            Family::Gisin => "gisin",
            Family::Rho3 => "rho3",
            Family::ProductMixture => "product_mixture",
            Family::PurePhi => "pure_phi",
            Family::PureEnt => "pure_ent",
        }
    }

    pub fn param_range(self) -> (f64, f64) {
        match self {
            Family::PureEnt => (0.0, FRAC_PI_2),
            _ => (0.0, 1.0),
        }
    }

    pub fn is_pure(self) -> bool {
        matches!(self, Family::PurePhi | Family::PureEnt)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnknownFamily;

impl fmt::Display for UnknownFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("unknown family (expected werner, gisin, rho3, product_mixture, pure_phi or pure_ent)")
    }
}

impl core::error::Error for UnknownFamily {}

impl FromStr for Family {
    type Err = UnknownFamily;
    fn from_str(s: &str) -> core::result::Result<Self, UnknownFamily> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or(UnknownFamily)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub param: f64,
}

impl FamilySpec {
    pub fn new(family: Family, param: f64) -> Result<Self> {
        let (lo, hi) = family.param_range();
        if !(lo..=hi).contains(&param) {
            return Err(Error::ParamOutOfRange {
                family: family.name(),
                value: param,
            });
        }
        Ok(FamilySpec { family, param })
    }

    /// The pure state behind a pure family, `None` for the mixtures.
    pub fn pure_state(&self) -> Result<Option<PureState>> {
        match self.family {
            Family::PurePhi => PureState::phi_family(self.param).map(Some),
            Family::PureEnt => PureState::ent_family(self.param).map(Some),
            _ => Ok(None),
        }
    }
}

pub fn build_family(spec: FamilySpec) -> Result<DensityMatrix> {
    let spec = FamilySpec::new(spec.family, spec.param)?;
    let x = spec.param;
    let psi_plus = DensityMatrix::from_pure(&bell_state(BellKind::PsiPlus));
    let e00 = DensityMatrix::basis(0);
    let e11 = DensityMatrix::basis(3);
    let rho = match spec.family {
        Family::Werner => {
            DensityMatrix::mixture(&[(1.0 - x, DensityMatrix::maximally_mixed()), (x, psi_plus)])
        }
        Family::Gisin => DensityMatrix::mixture(&[
            ((1.0 - x) / 2.0, e00),
            ((1.0 - x) / 2.0, e11),
            (x, psi_plus),
        ]),
        Family::Rho3 => DensityMatrix::mixture(&[(1.0 - x, e00), (x, psi_plus)]),
        Family::ProductMixture => DensityMatrix::mixture(&[(x, e11), (1.0 - x, e00)]),
        Family::PurePhi | Family::PureEnt => {
            let psi = spec.pure_state()?.expect("pure family");
            DensityMatrix::from_pure(&psi)
        }
    };
    Ok(rho)
}

/// Upper limit on mixture terms; 16 product states reach every two-qubit separable state.
pub const MAX_TERMS_LIMIT: u32 = 16;
pub const DEFAULT_MAX_TERMS: u32 = 8;

/// One draw of the separable-state sampler.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparableSample {
    pub state: DensityMatrix,
    pub num_terms: u32,
    pub seed: u64,
    pub index: u64,
}

/// Pure qubit state with Bloch vector uniform on the sphere.
fn random_qubit(rng: &mut SampleRng) -> Mat2 {
    let cos_t = 2.0 * rng.uniform() - 1.0;
    let phi = 2.0 * PI * rng.uniform();
    let sin_t = math::sqrt((1.0 - cos_t * cos_t).max(0.0));
    let n = [sin_t * math::cos(phi), sin_t * math::sin(phi), cos_t];
    (Mat2::identity() + linalg::pauli_dot(n)).scale_real(0.5)
}

/// Draws `sum_k p_k rho_A^k ⊗ rho_B^k` with `K` uniform on `1..=max_terms`, flat Dirichlet
/// weights and uniformly random pure factors. Fully determined by `(seed, index)`.
pub fn sample_separable(seed: u64, index: u64, max_terms: u32) -> Result<SeparableSample> {
    if !(1..=MAX_TERMS_LIMIT).contains(&max_terms) {
        return Err(Error::OutOfRange {
            name: "max_terms",
            value: max_terms as f64,
        });
    }
    let mut rng = SampleRng::new(seed, index);
    let k = 1 + rng.below(max_terms as u64) as usize;
    let mut weights = [0.0; MAX_TERMS_LIMIT as usize];
    for w in weights.iter_mut().take(k) {
        *w = rng.exponential();
    }
    let total: f64 = weights[..k].iter().sum();
    let mut m = Mat4::zeros();
    for &w in &weights[..k] {
        let a = random_qubit(&mut rng);
        let b = random_qubit(&mut rng);
        m = m + kron(&a, &b).scale_real(w / total);
    }
    Ok(SeparableSample {
        state: DensityMatrix::new_unchecked(m),
        num_terms: k as u32,
        seed,
        index,
    })
}
