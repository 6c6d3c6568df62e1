//! Byte-stable JSON rendering.

use serde_json::ser::Formatter;
use serde_json::Value;
use std::io;

/// Shortest decimal that round-trips to the value after rounding to
/// `precision` significant digits. Integral values print without a
/// fraction and `-0` prints as `0`.
pub fn format_number(x: f64, precision: u32) -> String {
    debug_assert!(x.is_finite());
    let p = precision.clamp(1, 17) as usize;
    let rounded = if p >= 17 {
        x
    } else {
        format!("{:.*e}", p - 1, x).parse::<f64>().expect("formatted float parses")
    };
    if rounded == 0.0 {
        "0".to_string()
    } else if rounded.fract() == 0.0 && rounded.abs() < 1e16 {
        format!("{}", rounded as i64)
    } else {
        format!("{rounded:?}")
    }
}

struct Numbers {
    precision: u32,
}

impl Formatter for Numbers {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        writer.write_all(format_number(value, self.precision).as_bytes())
    }
}

/// Compact single-line JSON. Non-finite numbers become `null`.
pub fn render(value: &Value, precision: u32) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Numbers { precision });
    serde::Serialize::serialize(value, &mut ser).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn numbers() {
        assert_eq!(format_number(-1.0, 17), "-1");
        assert_eq!(format_number(-0.0, 17), "0");
        assert_eq!(format_number(0.1, 17), "0.1");
        assert_eq!(format_number(std::f64::consts::FRAC_1_SQRT_2, 17), "0.7071067811865476");
        assert_eq!(format_number(std::f64::consts::FRAC_1_SQRT_2, 4), "0.7071");
        assert_eq!(format_number(1e-7, 17), "1e-7");
        assert_eq!(format_number(2.5e20, 17), "2.5e20");
        assert_eq!(format_number(123456.0, 2), "120000");
        assert_eq!(format_number(-1e-20, 1), "-1e-20");
        assert_eq!(format_number(0.99999, 2), "1");
    }

    #[test]
    fn rendering_is_compact_and_ordered() {
        let v = json!({"z": [1.0, -0.5], "a": f64::NAN, "n": 3});
        assert_eq!(render(&v, 17), r#"{"z":[1,-0.5],"a":null,"n":3}"#);
    }
}
