//! Byte-stable JSON and number formatting.

use serde_json::Value;

/// Formats like C's `%.17g`.
pub fn fmt_g17(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-4..17).contains(&exp) {
        strip_zeros(format!("{x:.*}", (16 - exp) as usize))
    } else {
        let sign = if exp < 0 { '-' } else { '+' };
        format!(
            "{}e{sign}{:02}",
            strip_zeros(mantissa.to_string()),
            exp.abs()
        )
    }
}

fn strip_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

/// Pretty-prints `value` with sorted keys, two-space indentation and floats
/// in `%.17g`. Arrays of scalars stay on one line. Non-finite floats become
/// `null`.
pub fn to_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(value, 0, &mut out);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => {
                if x.is_finite() {
                    out.push_str(&fmt_g17(x));
                } else {
                    out.push_str("null");
                }
            }
            _ => out.push_str(&n.to_string()),
        },
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) if items.is_empty() => out.push_str("[]"),
        Value::Array(items) if items.iter().all(is_scalar) => {
            out.push('[');
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                write_value(item, indent, out);
            }
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                pad(indent + 2, out);
                write_value(item, indent + 2, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push(']');
        }
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, key) in keys.iter().enumerate() {
                pad(indent + 2, out);
                out.push_str(&Value::String((*key).clone()).to_string());
                out.push_str(": ");
                write_value(&map[key.as_str()], indent + 2, out);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            pad(indent, out);
            out.push('}');
        }
    }
}

fn pad(n: usize, out: &mut String) {
    out.extend(std::iter::repeat_n(' ', n));
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn g17_matches_printf() {
        let cases = [
            (0.1, "0.10000000000000001"),
            (1.0, "1"),
            (0.5, "0.5"),
            (-2.5, "-2.5"),
            (1e-5, "1.0000000000000001e-05"),
            (1.5e-4, "0.00014999999999999999"),
            (123456789.0, "123456789"),
            (1e17, "1e+17"),
            (1e16, "10000000000000000"),
            (std::f64::consts::PI, "3.1415926535897931"),
            (6.02214076e23, "6.0221407599999999e+23"),
            (0.0, "0"),
        ];
        for (x, want) in cases {
            assert_eq!(fmt_g17(x), want, "{x}");
        }
    }

    #[test]
    fn g17_round_trips() {
        for x in [0.1, 1.0 / 3.0, 2f64.sqrt(), 1e-300, 7.5e200, -0.0001234] {
            assert_eq!(fmt_g17(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn json_layout() {
        let v = json!({"b": [1.0, 2], "a": {"z": null, "y": "s"}, "c": [{"k": 0.5}]});
        let want = "{\n  \"a\": {\n    \"y\": \"s\",\n    \"z\": null\n  },\n  \"b\": [1, 2],\n  \"c\": [\n    {\n      \"k\": 0.5\n    }\n  ]\n}\n";
        assert_eq!(to_json(&v), want);
    }
}
