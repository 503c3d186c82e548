use qspeed_core::states::*;
use qspeed_core::linalg::{self, Mat2, Subsystem};
use std::f64::consts::FRAC_1_SQRT_2;
use qspeed_core::quantify::{entropy_vn, is_separable_ppt};

use proptest::prelude::*;

fn assert_state(rho: &DensityMatrix) {
    assert!(DensityMatrix::new(*rho.mat()).is_ok(), "{rho:?}");
}

#[test]
fn werner_limits() {
    let w1 = build_family(FamilySpec::new(Family::Werner, 1.0).unwrap()).unwrap();
    let psi = DensityMatrix::from_pure(&bell_state(BellKind::PsiPlus));
    assert!(w1.mat().max_abs_diff(psi.mat()) < 1e-15);
    let ev = w1.eigenvalues();
    assert!(ev[..3].iter().all(|l| l.abs() < 1e-12) && (ev[3] - 1.0).abs() < 1e-12);
    let w0 = build_family(FamilySpec::new(Family::Werner, 0.0).unwrap()).unwrap();
    assert!(w0.mat().max_abs_diff(DensityMatrix::maximally_mixed().mat()) < 1e-15);
}

#[test]
fn rho3_half_spectrum() {
    let r = build_family(FamilySpec::new(Family::Rho3, 0.5).unwrap()).unwrap();
    let ev = r.eigenvalues();
    let expected = [0.0, 0.0, 0.5, 0.5];
    for (l, e) in ev.iter().zip(expected) {
        assert!((l - e).abs() < 1e-12, "{ev:?}");
    }
}

#[test]
fn out_of_range_params_rejected() {
    assert!(FamilySpec::new(Family::Werner, 1.5).is_err());
    assert!(FamilySpec::new(Family::Gisin, -0.1).is_err());
    assert!(FamilySpec::new(Family::PureEnt, 2.0).is_err());
    assert!(FamilySpec::new(Family::PureEnt, 1.5).is_ok());
    let bad = FamilySpec {
        family: Family::Rho3,
        param: f64::NAN,
    };
    assert!(build_family(bad).is_err());
}

#[test]
fn family_names_round_trip() {
    for f in Family::ALL {
        assert_eq!(f.name().parse::<Family>().unwrap(), f);
    }
    assert!("bogus".parse::<Family>().is_err());
}

#[test]
fn bell_vectors() {
    let h = FRAC_1_SQRT_2;
    let psi = bell_state(BellKind::PsiPlus);
    assert_eq!(
        psi.amps().map(|z| z.re),
        [0.0, h, h, 0.0]
    );
    let phi = bell_state(BellKind::PhiPlus);
    assert_eq!(phi.amps().map(|z| z.re), [h, 0.0, 0.0, h]);
    for (i, a) in BellKind::ALL.iter().enumerate() {
        for (j, b) in BellKind::ALL.iter().enumerate() {
            let o = linalg::inner(bell_state(*a).amps(), bell_state(*b).amps());
            let expected = if i == j { 1.0 } else { 0.0 };
            assert!((o.norm() - expected).abs() < 1e-15);
        }
    }
}

#[test]
fn pure_families_follow_sign_conventions() {
    let p = PureState::phi_family(0.6).unwrap();
    assert_eq!(p.amps().map(|z| z.re), [0.8, 0.0, 0.0, 0.6]);
    let g = 0.3;
    let e = PureState::ent_family(g).unwrap();
    assert!((e.amps()[2].re - f64::cos(g)).abs() < 1e-15);
    assert!((e.amps()[1].re + f64::sin(g)).abs() < 1e-15);
}

#[test]
fn sampler_is_deterministic() {
    let a = sample_separable(7, 0, DEFAULT_MAX_TERMS).unwrap();
    let b = sample_separable(7, 0, DEFAULT_MAX_TERMS).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.state, sample_separable(7, 1, DEFAULT_MAX_TERMS).unwrap().state);
    assert!(sample_separable(7, 0, 0).is_err());
    assert!(sample_separable(7, 0, 17).is_err());
}

#[test]
fn single_term_samples_are_pure_products() {
    for i in 0..50 {
        let s = sample_separable(3, i, 1).unwrap();
        assert_eq!(s.num_terms, 1);
        assert!(entropy_vn(s.state.mat()).unwrap().abs() < 1e-9);
        assert!((s.state.purity() - 1.0).abs() < 1e-12);
    }
}

/// Octant index of the Bloch vector of a pure qubit density matrix.
fn octant(m: &Mat2) -> usize {
    let x = 2.0 * m.0[0][1].re;
    let y = -2.0 * m.0[0][1].im;
    let z = (m.0[0][0] - m.0[1][1]).re;
    (x > 0.0) as usize | ((y > 0.0) as usize) << 1 | ((z > 0.0) as usize) << 2
}

#[test]
fn sampler_population() {
    let mut octants_a = [0u32; 8];
    let mut octants_b = [0u32; 8];
    let mut terms = [0u32; 9];
    for i in 0..10_000 {
        let s = sample_separable(11, i, DEFAULT_MAX_TERMS).unwrap();
        assert!(is_separable_ppt(&s.state));
        assert_state(&s.state);
        terms[s.num_terms as usize] += 1;
        let k1 = sample_separable(12, i, 1).unwrap();
        octants_a[octant(&k1.state.reduced(Subsystem::A))] += 1;
        octants_b[octant(&k1.state.reduced(Subsystem::B))] += 1;
    }
    assert_eq!(terms[0], 0);
    assert!(terms[1..].iter().all(|&c| c > 1000));
    // chi-square, 7 degrees of freedom: p = 0.001 at 24.32
    for counts in [octants_a, octants_b] {
        let expected = 10_000.0 / 8.0;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 24.32, "chi2 = {chi2}, {counts:?}");
    }
}

proptest! {
    #[test]
    fn families_are_states(x in 0.0..=1.0f64) {
        for f in Family::ALL {
            let (lo, hi) = f.param_range();
            let p = lo + x * (hi - lo);
            let rho = build_family(FamilySpec::new(f, p).unwrap()).unwrap();
            assert_state(&rho);
        }
    }

    #[test]
    fn werner_spectrum(x in 0.0..=1.0f64) {
        let rho = build_family(FamilySpec::new(Family::Werner, x).unwrap()).unwrap();
        let mut expected = [(1.0 - x) / 4.0, (1.0 - x) / 4.0, (1.0 - x) / 4.0, (1.0 + 3.0 * x) / 4.0];
        expected.sort_by(f64::total_cmp);
        let ev = rho.eigenvalues();
        for k in 0..4 {
            prop_assert!((ev[k] - expected[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn families_are_continuous(x in 0.0..=0.99f64) {
        for f in Family::ALL {
            let (lo, hi) = f.param_range();
            let p = lo + x * (hi - lo);
            let a = build_family(FamilySpec::new(f, p).unwrap()).unwrap();
            let b = build_family(FamilySpec::new(f, p + 1e-6).unwrap()).unwrap();
            prop_assert!(a.mat().max_abs_diff(b.mat()) < 1e-5, "{f} at {p}");
        }
    }
}
