use num_complex::Complex64;

/// `%.15g`-style rendering: 15 significant digits, trailing zeros dropped,
/// exponent form outside `1e-5 ..= 1e15`.
pub fn sig15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.14e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..15).contains(&exp) {
        let decimals = (14 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0');
    if t.ends_with('.') {
        format!("{t}0")
    } else {
        t.to_string()
    }
}

pub fn complex(z: Complex64) -> String {
    format!("{},{}", sig15(z.re), sig15(z.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digits() {
        assert_eq!(sig15(1.0), "1.0");
        assert_eq!(sig15(0.0), "0");
        assert_eq!(sig15(-0.25), "-0.25");
        assert_eq!(sig15(1.0 / 3.0), "0.333333333333333");
        assert_eq!(sig15(0.2928932188134524), "0.292893218813452");
        assert_eq!(sig15(123456.0), "123456.0");
        assert_eq!(sig15(1.5e-7), "1.5e-7");
        assert_eq!(sig15(2.0e20), "2.0e20");
        assert_eq!(sig15(1.0000000000000002), "1.0");
    }

    #[test]
    fn complex_pairs() {
        assert_eq!(complex(Complex64::new(0.5, -1.0)), "0.5,-1.0");
    }
}
