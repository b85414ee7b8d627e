use std::path::Path;

use fracairy::csvio::{read_profile, read_table, write_profile, CSV_DIGITS};
use fracairy::format::sig;
use fracairy_core::data::DataProfile;
use proptest::prelude::*;

proptest! {
    #[test]
    fn sampled_data_round_trip_to_printed_precision(
        values in proptest::collection::vec(-1e6f64..1e6, 2..40),
        lower in -5.0f64..5.0,
        width in 0.1f64..10.0,
    ) {
        let path = Path::new("memory");
        let mut buf = Vec::new();
        write_profile(&mut buf, path, lower, lower + width, &values).unwrap();
        let DataProfile::Sampled { lower: l, upper: u, values: back } = read_profile(&buf[..], path).unwrap() else {
            panic!("expected sampled data");
        };
        prop_assert!((l - lower).abs() <= 1e-11 * lower.abs().max(1.0));
        prop_assert!((u - lower - width).abs() <= 1e-11 * (lower + width).abs().max(1.0));
        for (a, b) in values.iter().zip(&back) {
            prop_assert_eq!(sig(*a, CSV_DIGITS), sig(*b, CSV_DIGITS));
        }
    }

    #[test]
    fn printed_values_reparse_within_twelve_digits(v in proptest::num::f64::NORMAL) {
        let back: f64 = sig(v, CSV_DIGITS).parse().unwrap();
        prop_assert!(((back - v) / v).abs() <= 5e-12);
    }
}

#[test]
fn non_uniform_abscissae_are_rejected() {
    let text = "s,value\n0,0\n0.5,1\n0.7,2\n";
    assert!(read_profile(text.as_bytes(), Path::new("x.csv")).is_err());
}

#[test]
fn non_numeric_fields_are_rejected() {
    let text = "x,t,u\n0,0,zero\n";
    assert!(read_table(text.as_bytes(), Path::new("x.csv")).is_err());
}
