use qspeed_core::linalg::*;
use qspeed_core::Error;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn arb_c64() -> impl Strategy<Value = C64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(r, i)| c(r, i))
}

fn arb_mat<const N: usize>() -> impl Strategy<Value = Mat<N>> {
    proptest::collection::vec(arb_c64(), N * N).prop_map(|v| {
        let mut m = Mat::<N>::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = v[i * N + j];
            }
        }
        m
    })
}

fn arb_hermitian<const N: usize>() -> impl Strategy<Value = Mat<N>> {
    arb_mat::<N>().prop_map(|m| (m + m.adjoint()).scale_real(0.5))
}

fn arb_density() -> impl Strategy<Value = Mat4> {
    arb_mat::<4>().prop_map(|m| {
        let p = m * m.adjoint();
        p.scale_real(1.0 / p.trace().re)
    })
}

#[test]
fn kron_identity_and_basis_order() {
    assert_eq!(kron(&Mat2::identity(), &Mat2::identity()), Mat4::identity());
    let [sx, _, _] = pauli();
    let m = kron(&sx, &Mat2::identity());
    let e = |i: usize| core::array::from_fn::<C64, 4, _>(|k| if k == i { ONE } else { ZERO });
    // |00> <-> |10>, |01> <-> |11>
    assert_eq!(m.apply(&e(0)), e(2));
    assert_eq!(m.apply(&e(2)), e(0));
    assert_eq!(m.apply(&e(1)), e(3));
    assert_eq!(m.apply(&e(3)), e(1));
}

#[test]
fn pauli_spectrum() {
    let [sx, sy, sz] = pauli();
    for s in [sx, sy, sz] {
        let e = eig_hermitian(&s).unwrap();
        assert!((e.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 1.0).abs() < 1e-14);
    }
}

#[test]
fn diagonal_eigenvalues_sorted() {
    let e = eig_hermitian(&Mat4::from_real_diag([4.0, 1.0, 3.0, 2.0])).unwrap();
    assert_eq!(e.eigenvalues, [1.0, 2.0, 3.0, 4.0]);
}

#[test]
fn non_hermitian_rejected() {
    let mut m = Mat2::identity();
    m.0[0][1] = c(0.5, 0.0);
    assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    m.0[0][1] = c(f64::NAN, 0.0);
    assert!(eig_hermitian(&m).is_err());
}

#[test]
fn sqrt_of_diagonals() {
    assert!(sqrt_psd(&Mat4::identity()).unwrap().max_abs_diff(&Mat4::identity()) < 1e-14);
    let r = sqrt_psd(&Mat4::from_real_diag([4.0, 9.0, 0.0, 1.0])).unwrap();
    assert!(r.max_abs_diff(&Mat4::from_real_diag([2.0, 3.0, 0.0, 1.0])) < 1e-14);
    let err = sqrt_psd(&Mat2::from_real_diag([1.0, -1e-3])).unwrap_err();
    assert!(matches!(err, Error::NotPsd { .. }));
    // tiny negative eigenvalues are clamped
    assert!(sqrt_psd(&Mat2::from_real_diag([1.0, -1e-12])).is_ok());
}

#[test]
fn partial_trace_of_bell_and_product() {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let psi = [ZERO, c(h, 0.0), c(h, 0.0), ZERO];
    let rho = Mat4::outer(&psi, &psi);
    let half = Mat2::identity().scale_real(0.5);
    assert!(partial_trace(&rho, Subsystem::B).max_abs_diff(&half) < 1e-15);
    assert!(partial_trace(&rho, Subsystem::A).max_abs_diff(&half) < 1e-15);

    let ra = Mat([[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]]);
    let rb = Mat([[c(0.4, 0.0), c(0.0, -0.3)], [c(0.0, 0.3), c(0.6, 0.0)]]);
    let prod = kron(&ra, &rb);
    assert!(partial_trace(&prod, Subsystem::B).max_abs_diff(&ra) < 1e-15);
    assert!(partial_trace(&prod, Subsystem::A).max_abs_diff(&rb) < 1e-15);
    assert!(
        partial_transpose(&prod, Subsystem::B).max_abs_diff(&kron(&ra, &rb.transpose()))
            < 1e-15
    );
    assert!(
        partial_transpose(&prod, Subsystem::A).max_abs_diff(&kron(&ra.transpose(), &rb))
            < 1e-15
    );
}

#[test]
fn partial_transpose_of_bell_has_negative_half() {
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let psi = [ZERO, c(h, 0.0), c(h, 0.0), ZERO];
    let rho = Mat4::outer(&psi, &psi);
    let ev = eig_hermitian(&partial_transpose(&rho, Subsystem::B)).unwrap().eigenvalues;
    assert!((ev[0] + 0.5).abs() < 1e-14);
    for l in &ev[1..] {
        assert!((l - 0.5).abs() < 1e-14);
    }
}

proptest! {
    #[test]
    fn kron_mixed_product(a in arb_mat::<2>(), b in arb_mat::<2>(), cc in arb_mat::<2>(), d in arb_mat::<2>()) {
        let lhs = kron(&a, &b) * kron(&cc, &d);
        let rhs = kron(&(a * cc), &(b * d));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn kron_bilinear(a in arb_mat::<2>(), b in arb_mat::<2>(), cc in arb_mat::<2>(), alpha in arb_c64()) {
        let lhs = kron(&(a.scale(alpha) + b), &cc);
        let rhs = kron(&a, &cc).scale(alpha) + kron(&b, &cc);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
    }

    #[test]
    fn eig_reconstructs(m in arb_hermitian::<4>()) {
        let e = eig_hermitian(&m).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&m) < 1e-10);
        let v = e.eigenvectors;
        prop_assert!((v.adjoint() * v).max_abs_diff(&Mat4::identity()) < 1e-10);
        for w in e.eigenvalues.windows(2) {
            prop_assert!(w[0] <= w[1]);
        }
        prop_assert_eq!(e, eig_hermitian(&m).unwrap());
        let fast = eigenvalues_hermitian(&m);
        for k in 0..4 {
            prop_assert!((fast[k] - e.eigenvalues[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_reconstructs_8(m in arb_hermitian::<8>()) {
        let e = eig_hermitian(&m).unwrap();
        prop_assert!(e.reconstruct().max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn sqrt_squares_back(rho in arb_density()) {
        let r = sqrt_psd(&rho).unwrap();
        prop_assert!((r * r).max_abs_diff(&rho) < 1e-9);
        prop_assert!(r.hermiticity_error() < 1e-12);
    }

    #[test]
    fn partial_trace_keeps_trace(m in arb_mat::<4>()) {
        for s in [Subsystem::A, Subsystem::B] {
            prop_assert!((partial_trace(&m, s).trace() - m.trace()).norm() < 1e-12);
        }
    }

    #[test]
    fn partial_transpose_involution(rho in arb_density()) {
        for s in [Subsystem::A, Subsystem::B] {
            let pt = partial_transpose(&rho, s);
            prop_assert_eq!(partial_transpose(&pt, s), rho);
            prop_assert!(pt.hermiticity_error() < 1e-15);
            let sum: f64 = eigenvalues_hermitian(&pt).iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn local_conjugations_match_full(m in arb_mat::<4>(), v in arb_mat::<2>()) {
        let i2 = Mat2::identity();
        prop_assert!(conjugate_local_a(&m, &v).max_abs_diff(&m.conjugate_by(&kron(&v, &i2))) < 1e-12);
        prop_assert!(conjugate_local_b(&m, &v).max_abs_diff(&m.conjugate_by(&kron(&i2, &v))) < 1e-12);
    }

    #[test]
    fn closed_form_trace_norm(m in arb_hermitian::<4>()) {
        let shift = m.trace().re / 4.0;
        let t = m - Mat4::identity().scale_real(shift);
        let exact: f64 = eigenvalues_hermitian(&t).iter().map(|l| l.abs()).sum();
        prop_assert!((trace_norm_traceless(&t) - exact).abs() < 1e-6);
        prop_assert!((trace_norm4(&t) - exact).abs() < 1e-12 * exact.max(1.0));
    }

    #[test]
    fn accurate_trace_norm_on_rank_deficient_differences(
        v in proptest::array::uniform4(arb_c64()),
        w in proptest::array::uniform4(arb_c64()),
    ) {
        let nv = inner(&v, &v).re.sqrt();
        let nw = inner(&w, &w).re.sqrt();
        prop_assume!(nv > 1e-3 && nw > 1e-3);
        let v = v.map(|z| z / nv);
        let w = w.map(|z| z / nw);
        let m = Mat4::outer(&v, &v) - Mat4::outer(&w, &w);
        let exact: f64 = eigenvalues_hermitian(&m).iter().map(|l| l.abs()).sum();
        prop_assert!((trace_norm4(&m) - exact).abs() < 1e-12);
    }
}
