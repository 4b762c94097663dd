//! Number formatting for tables.

/// `x` truncated to `digits` decimals, printed without trailing zeros but
/// with at least one decimal (`1.0`, `2.858643`).
///
/// Values within a relative `1e-9` of a grid point snap to it, so
/// `3.9999999999999867` prints as `4.0` rather than `3.999999`.
pub fn round_down(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let scale = 10f64.powi(digits as i32);
    let scaled = x * scale;
    let near = scaled.round();
    let units = if (scaled - near).abs() <= 1e-9 * scaled.abs().max(1.0) {
        near
    } else {
        scaled.floor()
    };
    let mut s = format!("{:.*}", digits, units / scale);
    if digits == 0 {
        s.push_str(".0");
        return s;
    }
    while s.ends_with('0') && !s.ends_with(".0") {
        s.pop();
    }
    if s == "-0.0" {
        s = "0.0".into();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncates_and_trims() {
        assert_eq!(round_down(2.8586434, 6), "2.858643");
        assert_eq!(round_down(1.0, 6), "1.0");
        assert_eq!(round_down(16.0, 6), "16.0");
        assert_eq!(round_down(2.5, 6), "2.5");
        assert_eq!(round_down(3.9999999999999867, 6), "4.0");
        assert_eq!(round_down(9.0575549, 6), "9.057554");
        assert_eq!(round_down(6f64.sqrt(), 6), "2.449489");
        assert_eq!(round_down(1.23456789, 3), "1.234");
        assert_eq!(round_down(7.9, 0), "7.0");
        assert_eq!(round_down(0.0, 6), "0.0");
    }
}
