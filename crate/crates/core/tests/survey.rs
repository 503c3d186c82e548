use qspeed_core::survey::*;
use qspeed_core::states::{sample_separable, DEFAULT_MAX_TERMS};
use qspeed_core::{quantify, Error};

fn rec(mi: f64, d: f64) -> SurveyRecord {
    SurveyRecord {
        seed: 0,
        index: 0,
        num_terms: 1,
        mutual_info: mi,
        entropy_ab: 0.0,
        entropy_a: 0.0,
        entropy_b: 0.0,
        d_quarter: d,
        d_half: 0.0,
        d_dif: d,
        theta_a: 0.0,
        phi_a: 0.0,
        theta_b: 0.0,
        phi_b: 0.0,
    }
}

#[test]
fn single_record_summary() {
    let s = summarize(&[rec(0.7, 0.3)]).unwrap();
    assert_eq!((s.count, s.mean_x, s.median_x, s.std_x), (1, 0.7, 0.7, 0.0));
    assert_eq!((s.mean_y, s.median_y, s.std_y), (0.3, 0.3, 0.0));
}

#[test]
fn even_count_takes_lower_median() {
    let s = summarize(&[rec(0.8, 0.1), rec(0.4, 0.2)]).unwrap();
    assert!((s.mean_x - 0.6).abs() < 1e-15);
    assert_eq!(s.median_x, 0.4);
    assert_eq!(s.median_y, 0.1);
    assert_eq!(s.max_d_quarter, 0.2);
}

#[test]
fn empty_summary_is_an_error() {
    assert_eq!(summarize(&[]), Err(Error::Empty));
}

#[test]
fn records_regenerate_exactly() {
    let a = record_at(9, 3, DEFAULT_MAX_TERMS, 40).unwrap();
    let b = record_at(9, 3, DEFAULT_MAX_TERMS, 40).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.d_dif, a.d_quarter - a.d_half);
    assert!(a.d_quarter <= SEPARABLE_QUARTER_CEILING + 1e-6);
    let again = sample_separable(9, 3, DEFAULT_MAX_TERMS).unwrap();
    assert!(quantify::is_separable_ppt(&again.state));
}
