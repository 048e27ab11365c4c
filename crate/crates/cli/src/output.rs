//! Report serialization and the plain-text table layout.

use qsl2_core::{Matrix, Poly, Scalar};
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn scalar(x: &Scalar) -> String {
    x.to_string()
}

pub fn scalars(xs: &[Scalar]) -> Vec<String> {
    xs.iter().map(scalar).collect()
}

pub fn matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| scalars(r)).collect()
}

/// Coefficients from the constant term up.
pub fn poly(p: &Poly) -> Vec<String> {
    scalars(p.coeffs())
}

pub fn render<T: Serialize>(report: &T, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Table => {
            let value = serde_json::to_value(report).expect("reports serialize");
            let mut out = String::new();
            table(&value, "", &mut out);
            out
        }
    }
}

fn is_grid(v: &Value) -> bool {
    match v {
        Value::Array(rows) => {
            !rows.is_empty()
                && rows
                    .iter()
                    .all(|r| matches!(r, Value::Array(c) if c.iter().all(is_leaf)))
        }
        _ => false,
    }
}

fn is_leaf(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn leaf(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn grid(rows: &[Value], indent: &str, out: &mut String) {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.as_array().map(|c| c.iter().map(leaf).collect()).unwrap_or_default())
        .collect();
    let cols = cells.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            cells
                .iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in &cells {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{:>w$}", s, w = widths[c]))
            .collect();
        out.push_str(&format!("{}  {}\n", indent, line.join("  ")));
    }
}

fn table(v: &Value, indent: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_leaf(x) {
                    out.push_str(&format!("{}{}: {}\n", indent, k, leaf(x)));
                } else if let Value::Array(items) = x {
                    if items.iter().all(is_leaf) {
                        let parts: Vec<String> = items.iter().map(leaf).collect();
                        out.push_str(&format!("{}{}: [{}]\n", indent, k, parts.join(", ")));
                    } else if is_grid(x) {
                        out.push_str(&format!("{}{}:\n", indent, k));
                        grid(items, indent, out);
                    } else {
                        out.push_str(&format!("{}{}:\n", indent, k));
                        for (i, item) in items.iter().enumerate() {
                            if is_grid(item) {
                                out.push_str(&format!("{}  [{}]\n", indent, i));
                                grid(item.as_array().expect("grid"), &format!("{}  ", indent), out);
                            } else if is_leaf(item) {
                                out.push_str(&format!("{}  {}\n", indent, leaf(item)));
                            } else {
                                out.push_str(&format!("{}  [{}]\n", indent, i));
                                table(item, &format!("{}    ", indent), out);
                            }
                        }
                    }
                } else {
                    out.push_str(&format!("{}{}:\n", indent, k));
                    table(x, &format!("{}  ", indent), out);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                table(item, indent, out);
            }
        }
        other => out.push_str(&format!("{}{}\n", indent, leaf(other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn table_layout() {
        let v = json!({"verdict": "accept", "matrices": [[[1, 0], [0, 1]]], "degrees": [0, 1]});
        let mut out = String::new();
        table(&v, "", &mut out);
        assert_eq!(
            out,
            "degrees: [0, 1]\nmatrices:\n  [0]\n    1  0\n    0  1\nverdict: accept\n"
        );
    }
}
