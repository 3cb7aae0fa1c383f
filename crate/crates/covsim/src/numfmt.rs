//! Locale-independent float formatting for CSV output: 9 significant
//! digits, printf `%.9g` style (fixed notation for moderate exponents,
//! scientific otherwise, trailing zeros stripped).

pub(crate) fn g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.8e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("{:e} always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if !(-4..9).contains(&exp) {
        let m = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{m}e{exp}")
    } else {
        let decimals = (8 - exp).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed
                .trim_end_matches('0')
                .trim_end_matches('.')
                .to_string()
        } else {
            fixed
        }
    }
}

#[cfg(test)]
mod tests {
    use super::g9;

    #[test]
    fn nine_significant_digits() {
        assert_eq!(g9(81.390447601234), "81.3904476");
        assert_eq!(g9(0.00033), "0.00033");
        assert_eq!(g9(10.0), "10");
        assert_eq!(g9(-0.5), "-0.5");
        assert_eq!(g9(0.0), "0");
        assert_eq!(g9(2.8e9), "2.8e9");
        assert_eq!(g9(1.23456789e-7), "1.23456789e-7");
    }

    #[test]
    fn output_parses_back_to_nine_digits() {
        for &x in &[123.456789012, 3.3e-4, 0.15000000000000002, 999999999.0] {
            let parsed: f64 = g9(x).parse().unwrap();
            assert!((parsed - x).abs() <= 1e-8 * x.abs().max(1.0));
        }
    }
}
