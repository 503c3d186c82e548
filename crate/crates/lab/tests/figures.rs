use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use qspeed::figures::{
    distance_rows, kickoff_rows, product_mixture_rows, unit_steps, zaxis_rows, ProductMixtureMode,
};
use qspeed_core::dynamics::{MagnetConfig, TimeGrid};
use qspeed_core::states::Family;

#[test]
fn unit_steps_cover_the_interval() {
    assert_eq!(unit_steps(2).unwrap(), vec![0.0, 1.0]);
    let s = unit_steps(11).unwrap();
    assert_eq!(s.len(), 11);
    assert_eq!(s[10], 1.0);
    assert!((s[3] - 0.3).abs() < 1e-15);
    assert!(unit_steps(1).is_err());
}

#[test]
fn werner_kickoff_rows() {
    let rows = kickoff_rows(Family::Werner, 11, &MagnetConfig::XX).unwrap();
    assert_eq!(rows.len(), 11);
    let last = rows.last().unwrap();
    assert!((last.tau_sq.unwrap() - 0.25).abs() < 1e-12);
    let first = rows[0];
    assert_eq!((first.tau_sq, first.rate), (None, 0.0));
    assert_eq!(first.fields()[2], "");
}

#[test]
fn gisin_is_stationary_at_one_third() {
    let rows = kickoff_rows(Family::Gisin, 4, &MagnetConfig::XX).unwrap();
    assert!(rows[1].tau_sq.is_none());
    assert_eq!(rows[1].rate, 0.0);
    assert!(rows.iter().enumerate().all(|(i, r)| i == 1 || r.tau_sq.is_some()));
}

#[test]
fn energy_variance_is_two_one_plus_x() {
    for family in Family::MIXED_BELL {
        for r in kickoff_rows(family, 21, &MagnetConfig::XX).unwrap() {
            assert!((r.delta_e_var - 2.0 * (1.0 + r.x)).abs() < 1e-9, "{family} {}", r.x);
            assert!(r.delta_e_mean.abs() < 1e-12);
        }
    }
}

#[test]
fn rho3_under_opposite_z_fields() {
    let rows = distance_rows(Family::Rho3, &[1.0], &MagnetConfig::Z_MINUS_Z, &TimeGrid::default()).unwrap();
    assert_eq!(rows.len(), 721);
    for r in &rows {
        assert!((r.distance - (2.0 * r.t).sin().abs()).abs() < 1e-9);
    }
    assert_eq!(rows[0].t, 0.0);
    assert_eq!(rows[720].t, PI);
}

#[test]
fn zaxis_families_share_one_curve() {
    let xs = [0.0, 0.35, 1.0];
    let grid = TimeGrid::default();
    let rows = zaxis_rows(&xs, &grid).unwrap();
    assert_eq!(rows.len(), 4 * xs.len() * 721);
    for r in &rows {
        let want = if r.family == Family::ProductMixture {
            0.0
        } else {
            (r.x * (2.0 * r.t).sin()).abs()
        };
        assert!((r.distance - want).abs() < 1e-9, "{r:?}");
    }
}

#[test]
fn product_mixture_period_mode() {
    let grid = TimeGrid::default();
    let rows = product_mixture_rows(ProductMixtureMode::Period, &[0.5, 0.0], &grid).unwrap();
    let (half, pure) = rows.split_at(721);
    let max = half.iter().map(|r| r.distance).fold(0.0, f64::max);
    assert!((max - 0.5).abs() < 1e-12);
    // D(pi - t) = D(t), so the maximum recurs at 3 pi / 4; the first attainment is pi / 4
    let best = half.iter().find(|r| r.distance >= max - 1e-12).unwrap();
    assert_eq!(best.t, grid.time(180));
    assert!((best.t - FRAC_PI_4).abs() < 1e-15);
    assert!((pure[360].distance - 1.0).abs() < 1e-12);
    assert_eq!(pure[360].t, grid.time(360));
    assert!((pure[360].t - FRAC_PI_2).abs() < 1e-15);
}

#[test]
fn product_mixture_rejects_bad_weights() {
    let grid = TimeGrid::default();
    assert!(product_mixture_rows(ProductMixtureMode::Period, &[1.5], &grid).is_err());
    assert!(product_mixture_rows(ProductMixtureMode::Period, &[], &grid).is_err());
}
