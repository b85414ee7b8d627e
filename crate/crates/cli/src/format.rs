//! Number formatting shared by the CSV and report writers.

/// `v` with `digits` significant digits in the style of C's `%g`: plain
/// decimal for exponents in [−5, digits), scientific otherwise, trailing
/// zeros removed. Zero prints as `0`.
pub fn sig(v: f64, digits: usize) -> String {
    if v == 0.0 {
        return "0".into();
    }
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{exp}", trim_zeros(mantissa))
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::sig;

    #[test]
    fn matches_printf_g() {
        assert_eq!(sig(1.0 / 6.0, 7), "0.1666667");
        assert_eq!(sig(1e-6, 7), "1e-6");
        assert_eq!(sig(2e-4, 7), "0.0002");
        assert_eq!(sig(-2.0 / 3.0, 12), "-0.666666666667");
        assert_eq!(sig(123456789012345.0, 12), "1.23456789012e14");
        assert_eq!(sig(0.0, 12), "0");
        assert_eq!(sig(-0.0, 12), "0");
        assert_eq!(sig(1.5, 12), "1.5");
        assert_eq!(sig(100.0, 3), "100");
        assert_eq!(sig(1000.0, 3), "1e3");
    }

    #[test]
    fn round_trips_to_printed_precision() {
        for &v in &[core::f64::consts::PI, -1.234567890123456e-9, 7.0e22, 0.1] {
            let back: f64 = sig(v, 12).parse().unwrap();
            assert!(((back - v) / v).abs() < 1e-11, "{v} -> {back}");
        }
    }
}
