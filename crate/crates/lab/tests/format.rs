use proptest::prelude::*;
use qspeed::format::fmt_g;

#[test]
fn matches_c_percent_g() {
    let cases = [
        (0.0, "0"),
        (1.0, "1"),
        (-2.5, "-2.5"),
        (0.5, "0.5"),
        (std::f64::consts::PI, "3.14159265359"),
        (1.0 / 3.0, "0.333333333333"),
        (2.0 / 3.0, "0.666666666667"),
        (123456789012.0, "123456789012"),
        (1234567890123.0, "1.23456789012e+12"),
        (0.0001, "0.0001"),
        (0.00001234, "1.234e-05"),
        (9.9999999999999e2, "1000"),
        (1e-300, "1e-300"),
        (-0.0, "-0"),
    ];
    for (x, want) in cases {
        assert_eq!(fmt_g(x), want, "{x:e}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn reparsing_is_stable(x in proptest::num::f64::NORMAL | proptest::num::f64::SUBNORMAL) {
        let s = fmt_g(x);
        let y: f64 = s.parse().unwrap();
        prop_assert_eq!(fmt_g(y), s.clone());
        prop_assert!(((y - x) / x).abs() < 1e-11 || x.abs() < 1e-290, "{} vs {}", x, s);
    }

    #[test]
    fn at_most_twelve_significant_digits(x in -1e6..1e6f64) {
        let s = fmt_g(x);
        let mantissa = s.split('e').next().unwrap();
        let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
        prop_assert!(digits.trim_start_matches('0').len() <= 12, "{}", s);
    }
}
