//! Rendering helpers shared by the subcommands.

use clap::ValueEnum;
use hodgebn_core::picard::{DownClass, UpClass};
use hodgebn_core::rational::{self, Q};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("payloads serialize")
}

pub fn json_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("payloads serialize");
    s.push('\n');
    s
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Header plus rows, one line each.
pub fn csv<S: AsRef<str>>(header: &[S], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    let line = |fields: Vec<String>| fields.join(",");
    out.push_str(&line(
        header.iter().map(|h| csv_field(h.as_ref())).collect(),
    ));
    for row in rows {
        out.push('\n');
        out.push_str(&line(row.iter().map(|f| csv_field(f)).collect()));
    }
    out
}

fn strings(v: &[Q]) -> Vec<String> {
    v.iter().map(rational::format).collect()
}

pub fn down_class_csv(c: &DownClass) -> String {
    let mut header = vec!["eta".to_string(), "lambda".to_string()];
    header.extend((0..c.delta.len()).map(|i| format!("delta{i}")));
    csv(&header, &[strings(&c.coefficients())])
}

pub fn up_class_csv(c: &UpClass) -> String {
    let mut header = vec!["psi".to_string(), "eta".to_string(), "lambda".to_string()];
    header.extend((0..c.delta.len()).map(|i| format!("delta{i}")));
    let mut row = vec![c.psi.clone(), c.eta.clone(), c.lambda.clone()];
    row.extend(c.delta.iter().cloned());
    csv(&header, &[strings(&row)])
}

/// Flattens a JSON object with scalar values into a one-row CSV.
pub fn object_csv(value: &serde_json::Value) -> String {
    let Some(map) = value.as_object() else {
        return value.to_string();
    };
    let header: Vec<&str> = map.keys().map(String::as_str).collect();
    let row = map
        .values()
        .map(|v| match v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        })
        .collect();
    csv(&header, &[row])
}

/// `key = value` lines for a JSON object.
pub fn object_text(value: &serde_json::Value) -> String {
    let Some(map) = value.as_object() else {
        return value.to_string();
    };
    map.iter()
        .map(|(k, v)| match v {
            serde_json::Value::String(s) => format!("{k} = {s}"),
            other => format!("{k} = {other}"),
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use hodgebn_core::rational::int;

    #[test]
    fn csv_quotes_fields_with_commas() {
        assert_eq!(
            csv(&["a", "b"], &[vec!["0,1".into(), "x".into()]]),
            "a,b\n\"0,1\",x"
        );
    }

    #[test]
    fn class_csv_columns() {
        let c =
            DownClass::from_coefficients(3, 1, &[int(-24), int(68), int(-6), int(-12)]).unwrap();
        assert_eq!(
            down_class_csv(&c),
            "eta,lambda,delta0,delta1\n-24,68,-6,-12"
        );
    }

    #[test]
    fn object_renderings() {
        let v = serde_json::json!({"mu": "3/2", "nu": "0"});
        assert_eq!(object_csv(&v), "mu,nu\n3/2,0");
        assert_eq!(object_text(&v), "mu = 3/2\nnu = 0");
    }
}
