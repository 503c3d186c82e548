use qspeed_core::simplex::*;

#[test]
fn finds_quadratic_minimum() {
    let nm = NelderMead {
        max_evals: 2000,
        ..Default::default()
    };
    let m = nm.minimize::<2, 3>(
        |x| (x[0] - 1.0).powi(2) + 3.0 * (x[1] + 2.0).powi(2),
        [0.0, 0.0],
        [0.5, 0.5],
    );
    assert!((m.x[0] - 1.0).abs() < 1e-8 && (m.x[1] + 2.0).abs() < 1e-8, "{m:?}");
    assert!(m.evals <= 2000);
}

#[test]
fn rosenbrock() {
    let nm = NelderMead {
        max_evals: 5000,
        ..Default::default()
    };
    let m = nm.minimize::<2, 3>(
        |x| 100.0 * (x[1] - x[0] * x[0]).powi(2) + (1.0 - x[0]).powi(2),
        [-1.2, 1.0],
        [0.1, 0.1],
    );
    assert!(m.value < 1e-12, "{m:?}");
}

#[test]
fn budget_is_respected_and_monotone() {
    let f = |x: &[f64; 4]| x.iter().enumerate().map(|(i, v)| (i as f64 + 1.0) * (v - 0.3).powi(2)).sum::<f64>();
    let mut last = f64::INFINITY;
    for budget in [1, 5, 10, 40, 80, 160, 320] {
        let nm = NelderMead {
            max_evals: budget,
            ..Default::default()
        };
        let m = nm.minimize::<4, 5>(f, [0.0; 4], [0.1; 4]);
        assert!(m.evals <= budget.max(1));
        assert!(m.value <= last);
        last = m.value;
    }
}
