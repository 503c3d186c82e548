//! Entanglement, mixedness and correlation measures. Entropies are in bits.

use crate::error::{Error, Result};
use crate::linalg::{self, kron, Mat, Mat4, Subsystem, PSD_TOL};
use crate::math;
use crate::states::DensityMatrix;

/// Partial-transpose eigenvalues at or above `-PPT_TOL` count as non-negative.
pub const PPT_TOL: f64 = 1e-9;

/// `sigma_y ⊗ sigma_y`, the two-qubit spin flip.
fn spin_flip() -> Mat4 {
    let [_, sy, _] = linalg::pauli();
    kron(&sy, &sy)
}

/// Singular values (descending) of `sqrt(rho) (sigma_y ⊗ sigma_y) conj(sqrt(rho))`.
///
/// These are Wootters' `lambda_i`, the square roots of the spectrum of
/// `sqrt(rho) rho~ sqrt(rho)`. They are read off the Hermitian dilation
/// `[[0, T], [T^dagger, 0]]`, whose eigenvalues are `±sigma_i`, so no square root of a
/// roundoff-sized eigenvalue is ever taken.
pub fn wootters_lambdas(rho: &DensityMatrix) -> [f64; 4] {
    let root = linalg::eig_hermitian(rho.mat())
        .map(|e| e.map_spectrum(|l| math::sqrt(l.max(0.0))))
        .unwrap_or_else(|_| *rho.mat());
    let t = root * spin_flip() * root.conj();
    let td = t.adjoint();
    let mut dil = Mat::<8>::zeros();
    for i in 0..4 {
        for j in 0..4 {
            dil.0[i][4 + j] = t.0[i][j];
            dil.0[4 + i][j] = td.0[i][j];
        }
    }
    let ev = linalg::eigenvalues_hermitian(&dil);
    [ev[7], ev[6], ev[5], ev[4]].map(|l| l.max(0.0))
}

/// Wootters concurrence, in `[0, 1]`.
pub fn concurrence(rho: &DensityMatrix) -> f64 {
    let l = wootters_lambdas(rho);
    (l[0] - l[1] - l[2] - l[3]).clamp(0.0, 1.0)
}

/// Smallest eigenvalue of the partial transpose over `B`.
pub fn min_partial_transpose_eigenvalue(rho: &DensityMatrix) -> f64 {
    linalg::eigenvalues_hermitian(&linalg::partial_transpose(rho.mat(), Subsystem::B))[0]
}

/// Peres–Horodecki test, exact for two qubits. States within `PPT_TOL` of the boundary are
/// reported separable.
pub fn is_separable_ppt(rho: &DensityMatrix) -> bool {
    min_partial_transpose_eigenvalue(rho) >= -PPT_TOL
}

/// Von Neumann entropy in bits of a unit-trace Hermitian PSD matrix of any size.
pub fn entropy_vn<const N: usize>(m: &Mat<N>) -> Result<f64> {
    let tr = m.trace().re;
    if (tr - 1.0).abs() > 1e-9 {
        return Err(Error::BadTrace { trace: tr });
    }
    let eig = linalg::eig_hermitian(m)?;
    if eig.eigenvalues[0] < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.eigenvalues[0],
        });
    }
    Ok(shannon_bits(&eig.eigenvalues))
}

fn shannon_bits(p: &[f64]) -> f64 {
    let s: f64 = p
        .iter()
        .filter(|&&l| l > 0.0)
        .map(|&l| -l * math::log2(l))
        .sum();
    s.max(0.0)
}

fn state_entropies(rho: &DensityMatrix) -> (f64, f64, f64) {
    let ab = shannon_bits(&rho.eigenvalues());
    let a = shannon_bits(&linalg::eigenvalues_hermitian(&rho.reduced(Subsystem::A)));
    let b = shannon_bits(&linalg::eigenvalues_hermitian(&rho.reduced(Subsystem::B)));
    (ab, a, b)
}

/// `I = S(rho_A) + S(rho_B) - S(rho_AB)`.
pub fn mutual_information(rho: &DensityMatrix) -> f64 {
    let (ab, a, b) = state_entropies(rho);
    a + b - ab
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasureReport {
    pub concurrence: f64,
    pub entropy_ab: f64,
    pub entropy_a: f64,
    pub entropy_b: f64,
    pub mutual_info: f64,
    pub separable: bool,
}

pub fn measure_report(rho: &DensityMatrix) -> MeasureReport {
    let (entropy_ab, entropy_a, entropy_b) = state_entropies(rho);
    MeasureReport {
        concurrence: concurrence(rho),
        entropy_ab,
        entropy_a,
        entropy_b,
        mutual_info: entropy_a + entropy_b - entropy_ab,
        separable: is_separable_ppt(rho),
    }
}
