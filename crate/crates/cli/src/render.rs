//! Aligned plain-text rendering of a JSON report.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some()) => items
            .iter()
            .map(|x| scalar(x).unwrap())
            .collect::<Vec<_>>()
            .join(" "),
        _ => scalar(v).unwrap_or_else(|| v.to_string()),
    }
}

/// Rows of scalars, e.g. a moment table indexed by `[a][j]`.
fn grid(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| {
            r.as_array()
                .filter(|r| !r.is_empty())
                .and_then(|r| r.iter().map(scalar).collect::<Option<Vec<_>>>())
        })
        .collect()
}

fn push_grid(out: &mut String, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let label = rows.len().saturating_sub(1).to_string().len();
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!("    {i:>label$} |"));
        for (c, x) in r.iter().enumerate() {
            out.push_str(&format!(" {x:>w$}", w = widths[c]));
        }
        out.push('\n');
    }
}

pub fn table(report: &serde_json::Map<String, Value>) -> String {
    let width = report.keys().map(String::len).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in report {
        if let Some(rows) = grid(v) {
            out.push_str(&format!("{k}\n"));
            push_grid(&mut out, &rows);
            continue;
        }
        match v {
            Value::Object(map) => {
                out.push_str(&format!("{k}\n"));
                let w = map.keys().map(String::len).max().unwrap_or(0);
                for (kk, vv) in map {
                    out.push_str(&format!("    {kk:<w$}  {}\n", inline(vv)));
                }
            }
            Value::Array(items) if items.iter().any(Value::is_object) => {
                out.push_str(&format!("{k}\n"));
                for item in items {
                    out.push_str(&format!("    {}\n", inline(item)));
                }
            }
            _ => out.push_str(&format!("{k:<width$}  {}\n", inline(v))),
        }
    }
    out
}

fn has_object(v: &Value) -> bool {
    match v {
        Value::Object(_) => true,
        Value::Array(items) => items.iter().any(has_object),
        _ => false,
    }
}

fn write_json(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, x)) in map.iter().enumerate() {
                out.push_str(&format!("{pad}{}: ", Value::String(k.clone())));
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}}}", "  ".repeat(indent)));
        }
        Value::Array(items) if has_object(v) => {
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_json(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&format!("{}]", "  ".repeat(indent)));
        }
        _ => out.push_str(&v.to_string()),
    }
}

/// Indented objects; arrays without objects inside stay on one line.
pub fn json(v: &Value) -> String {
    let mut out = String::new();
    write_json(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn json_keeps_numeric_arrays_inline() {
        let v = json!({"a": [[1, 2], [3]], "b": {"c": null}, "d": [{"e": 1}]});
        let text = json(&v);
        assert_eq!(text, "{\n  \"a\": [[1,2],[3]],\n  \"b\": {\n    \"c\": null\n  },\n  \"d\": [\n    {\n      \"e\": 1\n    }\n  ]\n}");
        assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    }

    #[test]
    fn aligns_keys_and_grids() {
        let v = json!({"k": 3, "family": "closure", "moments": [[1, 0], [12, 1]], "profile": [4, 18, 24]});
        let t = table(v.as_object().unwrap());
        assert_eq!(
            t,
            "k        3\nfamily   closure\nmoments\n    0 |  1 0\n    1 | 12 1\nprofile  4 18 24\n"
        );
    }
}
