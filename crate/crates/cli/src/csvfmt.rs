//! CSV output: '.' decimal separator, no grouping, reals at six significant
//! digits with trailing zeros trimmed. Byte-stable for identical inputs.

/// Format with six significant digits, plain decimal notation.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn flag(b: bool) -> &'static str {
    if b {
        "1"
    } else {
        "0"
    }
}

/// Join one CSV row.
pub fn row<I: IntoIterator<Item = String>>(fields: I) -> String {
    fields.into_iter().collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(509.5), "509.5");
        assert_eq!(sig6(654.84204), "654.842");
        assert_eq!(sig6(0.285214812), "0.285215");
        assert_eq!(sig6(14.0), "14");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(-12.5), "-12.5");
        assert_eq!(sig6(1.4395577), "1.43956");
        assert_eq!(sig6(1890.0), "1890");
        assert_eq!(sig6(0.0001234567), "0.000123457");
    }
}
