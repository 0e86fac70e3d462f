//! CSV and JSON emission with a versioned metadata header.
//!
//! CSV: UTF-8, comma separated, one `#`-prefixed comment line carrying the
//! schema version, seed, calibration choice and every clamp, then a header
//! row, then data rows with floats at 12 significant digits in deterministic
//! order. JSON: one object `{meta, rows}`.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::charsum::polya_calibration;

pub const SCHEMA_VERSION: &str = concat!("cubic-lab/", env!("CARGO_PKG_VERSION"));

/// Run metadata included in every emitted table.
#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub version: String,
    pub seed: Option<u64>,
    pub polya_convention: String,
    pub params: BTreeMap<String, String>,
    pub clamps: Vec<String>,
}

impl Meta {
    pub fn new(seed: Option<u64>) -> Self {
        Meta {
            version: SCHEMA_VERSION.to_string(),
            seed,
            polya_convention: format!("{:?}", polya_calibration().chosen),
            params: BTreeMap::new(),
            clamps: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_clamp(mut self, note: impl ToString) -> Self {
        self.clamps.push(note.to_string());
        self
    }

    fn comment_line(&self) -> String {
        let mut parts = vec![
            format!("version={}", self.version),
            format!("polya_convention={}", self.polya_convention),
        ];
        if let Some(s) = self.seed {
            parts.push(format!("seed={s}"));
        }
        for (k, v) in &self.params {
            parts.push(format!("{k}={v}"));
        }
        for c in &self.clamps {
            parts.push(format!("clamp[{c}]"));
        }
        format!("# {}", parts.join(" "))
    }
}

/// 12 significant digits, locale-free.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    format!("{x:.11e}")
}

/// Renders a CSV table: comment line, header, rows.
pub fn render_csv(meta: &Meta, header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&meta.comment_line());
    out.push('\n');
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Renders `{meta, rows}` as pretty JSON.
pub fn render_json<T: Serialize>(meta: &Meta, rows: &T) -> String {
    let doc = serde_json::json!({
        "meta": meta,
        "rows": rows,
    });
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_significant_digits() {
        assert_eq!(fmt_f64(0.0), "0");
        let s = fmt_f64(1.0 / 3.0);
        assert!(s.starts_with("3.3333333333"), "{s}");
        let s = fmt_f64(12345.6789);
        assert!(s.contains('e'), "{s}");
    }

    #[test]
    fn csv_shape() {
        let meta = Meta::new(Some(7)).with_param("Q", 500).with_clamp("y>=100");
        let csv = render_csv(
            &meta,
            &["a", "b"],
            &[vec!["1".into(), "2".into()], vec!["3".into(), "4".into()]],
        );
        let lines: Vec<&str> = csv.lines().collect();
        assert!(lines[0].starts_with("# version="));
        assert!(lines[0].contains("seed=7"));
        assert!(lines[0].contains("Q=500"));
        assert!(lines[0].contains("clamp[y>=100]"));
        assert_eq!(lines[1], "a,b");
        assert_eq!(lines[2], "1,2");
        assert_eq!(lines.len(), 4);
    }
}
