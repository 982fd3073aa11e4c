use gaborform::SparsePolynomial;
use serde::Serialize;
use serde_json::Value;

/// Significant digits kept in every printed number.
pub const DIGITS: usize = 12;

pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", DIGITS - 1, x).parse().unwrap_or(x)
}

pub fn num(x: f64) -> String {
    let r = round_sig(x);
    if r == 0.0 {
        // no "-0"
        "0".to_string()
    } else if (1e-4..1e15).contains(&r.abs()) {
        r.to_string()
    } else {
        format!("{r:e}")
    }
}

/// `p` with coefficients rounded for display.
pub fn poly(p: &SparsePolynomial) -> String {
    SparsePolynomial::from_terms(p.terms().iter().map(|t| (t.exponent, round_sig(t.coeff))))
        .map(|q| q.to_string())
        .unwrap_or_else(|_| p.to_string())
}

pub fn list(xs: &[f64], sep: &str) -> String {
    xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(sep)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n
                .as_f64()
                .map(round_sig)
                .and_then(serde_json::Number::from_f64)
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut v = serde_json::to_value(value).expect("reports serialize");
    round_value(&mut v);
    serde_json::to_string_pretty(&v).expect("values serialize")
}

/// Aligned `key  value` lines.
pub fn table(rows: &[(String, String)]) -> String {
    let width = rows
        .iter()
        .map(|(k, _)| k.chars().count())
        .max()
        .unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

/// `key,value` lines; values containing commas are quoted.
pub fn csv(rows: &[(String, String)]) -> String {
    rows.iter()
        .map(|(k, v)| {
            if v.contains(',') || v.contains('"') {
                format!("{k},\"{}\"\n", v.replace('"', "\"\""))
            } else {
                format!("{k},{v}\n")
            }
        })
        .collect()
}
