//! JSON encodings shared by reports: elements are base-p coefficient
//! vectors (constant term first), matrices are row-major arrays of those.

use serde_json::{json, Value};

use crate::field::{FieldCtx, Fe};
use crate::linalg::Mat;

/// Version stamped into every top-level report.
pub const SCHEMA_VERSION: u32 = 1;

pub fn fe_coeffs(ctx: &FieldCtx, a: Fe) -> Vec<u32> {
    ctx.coeffs(a)
}

pub fn point_json(ctx: &FieldCtx, x: &[Fe]) -> Value {
    json!(x.iter().map(|&a| ctx.coeffs(a)).collect::<Vec<_>>())
}

pub fn mat_json(ctx: &FieldCtx, m: &Mat) -> Value {
    json!(m
        .rows()
        .map(|r| r.iter().map(|&a| ctx.coeffs(a)).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

/// Flattens a JSON value into `path,value` lines for spreadsheet use.
pub fn to_csv(value: &Value) -> String {
    fn walk(prefix: &str, v: &Value, out: &mut Vec<String>) {
        match v {
            Value::Object(map) => {
                for (k, v) in map {
                    let path = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&path, v, out);
                }
            }
            Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                for (i, v) in items.iter().enumerate() {
                    walk(&format!("{prefix}[{i}]"), v, out);
                }
            }
            Value::Array(items) => {
                let cells: Vec<String> = items.iter().map(scalar).collect();
                out.push(format!("{prefix},\"{}\"", cells.join(" ")));
            }
            other => out.push(format!("{prefix},{}", scalar(other))),
        }
    }
    fn scalar(v: &Value) -> String {
        match v {
            Value::String(s) => s.replace('"', "\"\""),
            other => other.to_string(),
        }
    }
    let mut lines = vec!["path,value".to_string()];
    walk("", value, &mut lines);
    lines.join("\n") + "\n"
}
