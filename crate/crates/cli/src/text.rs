//! Human-readable rendering of command output. Not a stable format.

use serde_json::Value;

pub fn render(value: &Value) -> String {
    let mut out = String::new();
    walk("", value, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_object()) && items.len() <= 16 => {
            Some(serde_json::to_string(v).unwrap_or_default())
        }
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            Some(format!("[{} items]", items.len()))
        }
        _ => None,
    }
}

fn walk(path: &str, v: &Value, out: &mut String) {
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{path}: {s}\n"));
        return;
    }
    match v {
        Value::Object(map) => {
            // a named check reads best on one line
            if let (Some(Value::String(name)), Some(applicable)) = (map.get("name"), map.get("applicable")) {
                let verdict = match (applicable.as_bool(), map.get("holds").and_then(Value::as_bool)) {
                    (Some(false), _) => format!(
                        "n/a ({})",
                        map.get("hypothesis_failed").and_then(Value::as_str).unwrap_or("")
                    ),
                    (_, Some(true)) => "pass".into(),
                    _ => "FAIL".into(),
                };
                let lhs = map.get("lhs").and_then(scalar).unwrap_or_default();
                let rhs = map.get("rhs").and_then(scalar).unwrap_or_default();
                out.push_str(&format!("{path}: {name} {verdict} [{lhs} vs {rhs}]\n"));
                return;
            }
            for (k, child) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(&p, child, out);
            }
        }
        Value::Array(items) => {
            for (i, child) in items.iter().enumerate() {
                walk(&format!("{path}[{i}]"), child, out);
            }
        }
        _ => unreachable!("scalars handled above"),
    }
}
