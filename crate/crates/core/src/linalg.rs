//! Dense complex matrices of fixed small dimension.
//!
//! Everything here is sized at compile time: [`Mat2`] for a single spin, [`Mat4`]
//! for the pair. Two-qubit basis order is `|00>, |01>, |10>, |11>` with qubit `a`
//! as the left Kronecker factor, so basis index `2 * a + b`.

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::math;

pub use num_complex::Complex64 as C64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat<const N: usize>(pub [[C64; N]; N]);

pub type Mat2 = Mat<2>;
pub type Mat4 = Mat<4>;

/// Which half of the bipartite system an operation acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

impl<const N: usize> Default for Mat<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Mat<N> {
    pub const DIM: usize = N;

    pub const fn zeros() -> Self {
        Mat([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real_diag(d: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = C64::new(d[i], 0.0);
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[C64; N], v: &[C64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i];
            }
        }
        m
    }

    /// Entrywise complex conjugate in the computational basis.
    pub fn conj(&self) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z = z.conj();
            }
        }
        m
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z *= s;
            }
        }
        m
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn trace(&self) -> C64 {
        (0..N).map(|i| self.0[i][i]).fold(ZERO, |acc, z| acc + z)
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> C64 {
        let mut acc = ZERO;
        for i in 0..N {
            for k in 0..N {
                acc += self.0[i][k] * other.0[k][i];
            }
        }
        acc
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn max_abs(&self) -> f64 {
        self.max_abs_diff(&Self::zeros())
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.0.iter().flatten().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entrywise deviation from Hermiticity, `max |m - m^dagger|`.
    pub fn hermiticity_error(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn apply(&self, v: &[C64; N]) -> [C64; N] {
        let mut out = [ZERO; N];
        for i in 0..N {
            for j in 0..N {
                out[i] += self.0[i][j] * v[j];
            }
        }
        out
    }

    /// `u * self * u^dagger`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }
}

impl<const N: usize> Index<(usize, usize)> for Mat<N> {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Mat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Add for Mat<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Mat<N> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Mat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale_real(-1.0)
    }
}

impl<const N: usize> Mul for Mat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

pub fn inner<const N: usize>(u: &[C64; N], v: &[C64; N]) -> C64 {
    u.iter().zip(v).fold(ZERO, |acc, (a, b)| acc + a.conj() * b)
}

/// Pauli matrices `(sigma_x, sigma_y, sigma_z)`.
pub fn pauli() -> [Mat2; 3] {
    [
        Mat([[ZERO, ONE], [ONE, ZERO]]),
        Mat([[ZERO, -I], [I, ZERO]]),
        Mat([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

/// `sigma . n` for a real 3-vector `n`.
pub fn pauli_dot(n: [f64; 3]) -> Mat2 {
    Mat([
        [C64::new(n[2], 0.0), C64::new(n[0], -n[1])],
        [C64::new(n[0], n[1]), C64::new(-n[2], 0.0)],
    ])
}

/// Kronecker product `a ⊗ b`.
pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut m = Mat4::zeros();
    for ia in 0..2 {
        for ja in 0..2 {
            let s = a.0[ia][ja];
            for ib in 0..2 {
                for jb in 0..2 {
                    m.0[2 * ia + ib][2 * ja + jb] = s * b.0[ib][jb];
                }
            }
        }
    }
    m
}

pub fn kron_vec(u: &[C64; 2], v: &[C64; 2]) -> [C64; 4] {
    [u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1]]
}

/// Trace out `traced`, leaving the reduced matrix of the other subsystem.
pub fn partial_trace(m: &Mat4, traced: Subsystem) -> Mat2 {
    let mut r = Mat2::zeros();
    for i in 0..2 {
        for j in 0..2 {
            r.0[i][j] = match traced {
                Subsystem::B => m.0[2 * i][2 * j] + m.0[2 * i + 1][2 * j + 1],
                Subsystem::A => m.0[i][j] + m.0[2 + i][2 + j],
            };
        }
    }
    r
}

/// Transpose the indices of one subsystem.
pub fn partial_transpose(m: &Mat4, which: Subsystem) -> Mat4 {
    let mut r = Mat4::zeros();
    for ia in 0..2 {
        for ib in 0..2 {
            for ja in 0..2 {
                for jb in 0..2 {
                    let (ra, ca, rb, cb) = match which {
                        Subsystem::A => (ja, ia, ib, jb),
                        Subsystem::B => (ia, ja, jb, ib),
                    };
                    r.0[2 * ra + rb][2 * ca + cb] = m.0[2 * ia + ib][2 * ja + jb];
                }
            }
        }
    }
    r
}

/// Local conjugation `(I ⊗ v) m (I ⊗ v)^dagger`, cheaper than forming the 4×4 product.
pub fn conjugate_local_b(m: &Mat4, v: &Mat2) -> Mat4 {
    let vd = v.adjoint();
    let mut r = Mat4::zeros();
    for ia in 0..2 {
        for ja in 0..2 {
            let block = Mat([
                [m.0[2 * ia][2 * ja], m.0[2 * ia][2 * ja + 1]],
                [m.0[2 * ia + 1][2 * ja], m.0[2 * ia + 1][2 * ja + 1]],
            ]);
            let out = *v * block * vd;
            for ib in 0..2 {
                for jb in 0..2 {
                    r.0[2 * ia + ib][2 * ja + jb] = out.0[ib][jb];
                }
            }
        }
    }
    r
}

/// Local conjugation `(v ⊗ I) m (v ⊗ I)^dagger`.
pub fn conjugate_local_a(m: &Mat4, v: &Mat2) -> Mat4 {
    let mut r = Mat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            let vij = v.0[i][j];
            if vij == ZERO {
                continue;
            }
            for k in 0..2 {
                for l in 0..2 {
                    let w = vij * v.0[k][l].conj();
                    if w == ZERO {
                        continue;
                    }
                    for ib in 0..2 {
                        for jb in 0..2 {
                            r.0[2 * i + ib][2 * k + jb] += w * m.0[2 * j + ib][2 * l + jb];
                        }
                    }
                }
            }
        }
    }
    r
}

/// Sweep limit for the cyclic Jacobi eigensolver.
pub const MAX_SWEEPS: usize = 50;
/// Off-diagonal Frobenius norm (relative to `max(1, ||m||_F)`) at which Jacobi stops.
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Largest `max |m - m^dagger|` accepted by [`eig_hermitian`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenDecomposition<const N: usize> {
    /// Ascending.
    pub eigenvalues: [f64; N],
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: Mat<N>,
}

impl<const N: usize> EigenDecomposition<N> {
    pub fn eigenvector(&self, k: usize) -> [C64; N] {
        core::array::from_fn(|i| self.eigenvectors.0[i][k])
    }

    /// `V diag(f(lambda)) V^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Mat<N> {
        let mut r = Mat::<N>::zeros();
        for k in 0..N {
            let w = f(self.eigenvalues[k]);
            if w == 0.0 {
                continue;
            }
            for i in 0..N {
                let vik = self.eigenvectors.0[i][k] * w;
                for j in 0..N {
                    r.0[i][j] += vik * self.eigenvectors.0[j][k].conj();
                }
            }
        }
        r
    }

    pub fn reconstruct(&self) -> Mat<N> {
        self.map_spectrum(|l| l)
    }
}

/// Cyclic Jacobi on the upper triangle. Returns the rotated matrix (near-diagonal), the
/// accumulated rotations (when requested) and whether the tolerance was reached.
fn jacobi<const N: usize>(m: &Mat<N>, with_vectors: bool) -> (Mat<N>, Mat<N>, bool) {
    let mut a = *m;
    // Only the upper triangle is trusted; mirror it so rotations see an exactly Hermitian matrix.
    for i in 0..N {
        a.0[i][i] = C64::new(a.0[i][i].re, 0.0);
        for j in (i + 1)..N {
            a.0[j][i] = a.0[i][j].conj();
        }
    }
    let mut v = Mat::<N>::identity();
    let tol = OFF_DIAGONAL_TOL * a.frobenius_norm().max(1.0);

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..N {
            for j in (i + 1)..N {
                off += 2.0 * a.0[i][j].norm_sqr();
            }
        }
        if math::sqrt(off) < tol {
            return (a, v, true);
        }
        for p in 0..N {
            for q in (p + 1)..N {
                let apq = a.0[p][q];
                let r = apq.norm();
                if r < 1e-300 {
                    continue;
                }
                let phase = apq / r;
                let app = a.0[p][p].re;
                let aqq = a.0[q][q].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 {
                    1.0 / (theta + math::sqrt(1.0 + theta * theta))
                } else {
                    -1.0 / (-theta + math::sqrt(1.0 + theta * theta))
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;
                // Rotation G on columns (p, q): G = [[c, s], [-s e^{-ia}, c e^{-ia}]].
                let ph_c = phase.conj();
                let g_pp = C64::new(c, 0.0);
                let g_pq = C64::new(s, 0.0);
                let g_qp = ph_c * (-s);
                let g_qq = ph_c * c;
                // A <- A G
                for k in 0..N {
                    let akp = a.0[k][p];
                    let akq = a.0[k][q];
                    a.0[k][p] = akp * g_pp + akq * g_qp;
                    a.0[k][q] = akp * g_pq + akq * g_qq;
                }
                // A <- G^dagger A
                for k in 0..N {
                    let apk = a.0[p][k];
                    let aqk = a.0[q][k];
                    a.0[p][k] = g_pp.conj() * apk + g_qp.conj() * aqk;
                    a.0[q][k] = g_pq.conj() * apk + g_qq.conj() * aqk;
                }
                a.0[p][q] = ZERO;
                a.0[q][p] = ZERO;
                a.0[p][p] = C64::new(a.0[p][p].re, 0.0);
                a.0[q][q] = C64::new(a.0[q][q].re, 0.0);
                if with_vectors {
                    for k in 0..N {
                        let vkp = v.0[k][p];
                        let vkq = v.0[k][q];
                        v.0[k][p] = vkp * g_pp + vkq * g_qp;
                        v.0[k][q] = vkp * g_pq + vkq * g_qq;
                    }
                }
            }
        }
    }
    (a, v, false)
}

fn check_hermitian<const N: usize>(m: &Mat<N>) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let dev = m.hermiticity_error();
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { deviation: dev });
    }
    Ok(())
}

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
///
/// Eigenvalues come back ascending. Among equal eigenvalues the eigenvector order is
/// whatever the rotations produced; callers must not depend on it.
pub fn eig_hermitian<const N: usize>(m: &Mat<N>) -> Result<EigenDecomposition<N>> {
    check_hermitian(m)?;
    let (a, v, converged) = jacobi(m, true);
    if !converged {
        return Err(Error::NotConverged { sweeps: MAX_SWEEPS });
    }
    let mut order: [usize; N] = core::array::from_fn(|i| i);
    order.sort_by(|&i, &j| a.0[i][i].re.total_cmp(&a.0[j][j].re));
    let eigenvalues = core::array::from_fn(|k| a.0[order[k]][order[k]].re);
    let mut eigenvectors = Mat::<N>::zeros();
    for (k, &src) in order.iter().enumerate() {
        for i in 0..N {
            eigenvectors.0[i][k] = v.0[i][src];
        }
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

/// Ascending eigenvalues of a matrix assumed Hermitian (only the upper triangle is read).
///
/// Infallible: for the internally generated matrices this is used on, Jacobi converges in a
/// handful of sweeps; if the sweep cap is ever hit the current diagonal is returned.
pub fn eigenvalues_hermitian<const N: usize>(m: &Mat<N>) -> [f64; N] {
    let (a, _, _) = jacobi(m, false);
    let mut ev: [f64; N] = core::array::from_fn(|i| a.0[i][i].re);
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues below this are rejected by PSD routines; between it and zero they are clamped.
pub const PSD_TOL: f64 = 1e-9;

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn sqrt_psd<const N: usize>(m: &Mat<N>) -> Result<Mat<N>> {
    let eig = eig_hermitian(m)?;
    if eig.eigenvalues[0] < -PSD_TOL {
        return Err(Error::NotPsd {
            min_eigenvalue: eig.eigenvalues[0],
        });
    }
    Ok(eig.map_spectrum(|l| math::sqrt(l.max(0.0))))
}

/// `(tr m^2, tr m^3, ||m^2||_F^2)` of a Hermitian 4×4 matrix, reading only its upper triangle.
fn power_sums(m: &Mat4) -> (f64, f64, f64) {
    let a = &m.0;
    let mut p2 = 0.0;
    let mut p3 = 0.0;
    let mut p4 = 0.0;
    for i in 0..4 {
        p2 += a[i][i].re * a[i][i].re;
        for j in i..4 {
            let mut s = ZERO;
            for k in 0..4 {
                // a[i][k] for k < i lives in the lower triangle
                let aik = if k < i { a[k][i].conj() } else { a[i][k] };
                let akj = if k <= j { a[k][j] } else { a[j][k].conj() };
                s += aik * akj;
            }
            if i == j {
                p3 += s.re * a[i][i].re;
                p4 += s.re * s.re;
            } else {
                p2 += 2.0 * a[i][j].norm_sqr();
                p3 += 2.0 * (s * a[i][j].conj()).re;
                p4 += 2.0 * s.norm_sqr();
            }
        }
    }
    (p2, p3, p4)
}

/// Eigenvalues of a traceless Hermitian 4×4 matrix from its characteristic polynomial, plus
/// a conditioning flag.
///
/// The resolvent cubic has the squared pair sums `(l1 + l2)^2, (l1 + l3)^2, (l1 + l4)^2` as
/// roots. Square roots of near-zero roots and nearly coincident roots both lose about half
/// the digits; in those cases the flag is `false` and errors reach `1e-8 * ||m||`.
fn traceless_spectrum(m: &Mat4) -> ([f64; 4], bool) {
    const COND: f64 = 1e-6;
    let (p2, p3, p4) = power_sums(m);
    if p2 <= 0.0 {
        return ([0.0; 4], true);
    }
    // Depressed quartic x^4 + p x^2 + q x + r.
    let p = -0.5 * p2;
    let q = -p3 / 3.0;
    let r = 0.25 * (0.5 * p2 * p2 - p4);
    // Resolvent z^3 + a z^2 + b z + c.
    let a = 2.0 * p;
    let b = p * p - 4.0 * r;
    let c = -q * q;
    let shift = a / 3.0;
    let pp = b - a * a / 3.0;
    let qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    let mut z = [-shift; 3];
    let mut well_conditioned = false;
    if pp < -1e-300 {
        let amp = 2.0 * math::sqrt(-pp / 3.0);
        let arg = 3.0 * qq / (pp * amp);
        well_conditioned = 1.0 - arg * arg > COND;
        let phi = math::acos(arg.clamp(-1.0, 1.0)) / 3.0;
        for (k, zk) in z.iter_mut().enumerate() {
            *zk = amp * math::cos(phi - 2.0 * core::f64::consts::PI * k as f64 / 3.0) - shift;
        }
    }
    well_conditioned &= z.iter().all(|&zk| zk > COND * p2);
    let mut s = z.map(|zk| math::sqrt(zk.max(0.0)));
    if q > 0.0 {
        s[0] = -s[0];
    }
    let l = [
        0.5 * (s[0] + s[1] + s[2]),
        0.5 * (s[0] - s[1] - s[2]),
        0.5 * (-s[0] + s[1] - s[2]),
        0.5 * (-s[0] - s[1] + s[2]),
    ];
    (l, well_conditioned)
}

/// `sum |lambda_i|` for a traceless Hermitian 4×4 matrix, in closed form.
///
/// Accuracy degrades to roughly `1e-8 * ||m||` near repeated eigenvalues or vanishing pair
/// sums, so this is only used to rank candidates. [`trace_norm4`] is the accurate version.
pub fn trace_norm_traceless(m: &Mat4) -> f64 {
    traceless_spectrum(m).0.iter().map(|x| x.abs()).sum()
}

/// `sum |lambda_i|` for a Hermitian 4×4 matrix. Uses the closed form when it is well
/// conditioned and Jacobi otherwise.
pub fn trace_norm4(m: &Mat4) -> f64 {
    let tr = m.trace().re;
    if tr.abs() <= 1e-12 * m.max_abs().max(1.0) {
        let shifted = *m - Mat4::identity().scale_real(0.25 * tr);
        let (l, ok) = traceless_spectrum(&shifted);
        if ok {
            return l.iter().map(|x| (x + 0.25 * tr).abs()).sum();
        }
    }
    eigenvalues_hermitian(m).iter().map(|x| x.abs()).sum()
}
