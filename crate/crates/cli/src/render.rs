//! Plain-text rendering of command payloads: aligned `key: value` lines,
//! with arrays of objects shown as tables.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) if xs.iter().all(|x| !x.is_array() && !x.is_object()) => {
            xs.iter().map(cell).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn flatten<'a>(
    v: &'a Value,
    prefix: &str,
    kv: &mut Vec<(String, String)>,
    tables: &mut Vec<(String, &'a [Value])>,
) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(x, &key, kv, tables);
            }
        }
        Value::Array(xs) if !xs.is_empty() && xs.iter().all(Value::is_object) => {
            tables.push((prefix.to_string(), xs));
        }
        other => kv.push((prefix.to_string(), cell(other))),
    }
}

fn table(rows: &[Value]) -> String {
    let mut cols: Vec<String> = Vec::new();
    for r in rows {
        if let Value::Object(m) = r {
            for k in m.keys() {
                if !cols.contains(k) {
                    cols.push(k.clone());
                }
            }
        }
    }
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| cols.iter().map(|c| cell(r.get(c).unwrap_or(&Value::Null))).collect())
        .collect();
    let widths: Vec<usize> = cols
        .iter()
        .enumerate()
        .map(|(i, c)| body.iter().map(|r| r[i].len()).chain([c.len()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = line(&cols);
    out.push('\n');
    for r in &body {
        out.push_str(&line(r));
        out.push('\n');
    }
    out
}

pub fn human(payload: &Value) -> String {
    let mut kv = Vec::new();
    let mut tables = Vec::new();
    flatten(payload, "", &mut kv, &mut tables);
    let w = kv.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in &kv {
        out.push_str(&format!("{k:<w$}  {v}\n"));
    }
    for (name, rows) in tables {
        if !out.is_empty() {
            out.push('\n');
        }
        if !name.is_empty() {
            out.push_str(&format!("{name}:\n"));
        }
        out.push_str(&table(rows));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn aligned_keys_and_tables() {
        let s = human(&json!({"v": 13, "set": {"elements": [0, 1, 3, 9]}, "rows": [{"n": 1, "ok": true}, {"n": 10, "ok": false}]}));
        assert!(s.contains("set.elements  0 1 3 9"));
        assert!(s.contains("n   ok\n1   true\n10  false\n"));
    }
}
