//! Report items with text and JSON renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::homology::{Check, HilbertFit, HomologyReport};

pub const SCHEMA_VERSION: u64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

/// A titled group of named values, all valid through degree `valid_to`.
#[derive(Clone, Debug, PartialEq)]
pub struct Item {
    pub kind: String,
    pub valid_to: isize,
    pub fields: Vec<(String, Value)>,
}

impl Item {
    pub fn new(kind: impl Into<String>, valid_to: isize) -> Self {
        Item { kind: kind.into(), valid_to, fields: Vec::new() }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl Into<Value>) -> Self {
        self.fields.push((key.into(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn hilbert(fit: &HilbertFit) -> Self {
        Item::new("hilbert", fit.horizon())
            .field("dims", fit.dims.clone())
            .field("polynomial", fit.to_string())
            .field("coefficients", fit.coefficient_strings())
            .field("onset", fit.onset)
            .field("degree", fit.degree())
            .field("gd", fit.gd)
            .field("degree_within_gd", fit.degree_within_gd())
    }

    pub fn homology(r: &HomologyReport) -> Self {
        let mut item = Item::new("homology", r.horizon).field("depth", r.depth);
        for (i, row) in r.h.iter().enumerate() {
            item = item.field(format!("H_{i}"), row.clone());
        }
        item.field("hd", r.hd.clone())
            .field("gd", r.gd)
            .field("reg", r.reg)
            .field("reg_exact", r.reg_exact)
    }

    pub fn check(c: &Check) -> Self {
        Item::new("check", c.valid_to)
            .field("name", c.name.clone())
            .field("status", c.status.to_string())
            .field("detail", c.detail.clone())
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("kind".into(), json!(self.kind));
        m.insert("valid_to".into(), json!(self.valid_to));
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub items: Vec<Item>,
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(text_value).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, item: Item) {
        self.items.push(item);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }

    /// Compact JSON with keys in insertion order, newline terminated.
    pub fn to_json(&self) -> String {
        let items: Vec<Value> = self.items.iter().map(Item::to_json).collect();
        let mut m = Map::new();
        m.insert("version".into(), json!(SCHEMA_VERSION));
        m.insert("items".into(), Value::Array(items));
        let mut s = Value::Object(m).to_string();
        s.push('\n');
        s
    }

    /// One block per item, keys padded to a common width.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (n, item) in self.items.iter().enumerate() {
            if n > 0 {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}] valid through degree {}", item.kind, item.valid_to);
            let width = item.fields.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
            for (k, v) in &item.fields {
                let _ = writeln!(out, "  {k:<width$}  {}", text_value(v));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::fit_dims;

    #[test]
    fn empty_report() {
        assert_eq!(Report::new().to_json(), "{\"version\":1,\"items\":[]}\n");
        assert_eq!(Report::new().to_text(), "");
    }

    #[test]
    fn hilbert_item() {
        let fit = fit_dims(&[0, 1, 2, 3, 4, 5, 6], 1).unwrap();
        let mut r = Report::new();
        r.push(Item::hilbert(&fit));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["items"][0]["coefficients"], json!(["0", "1"]));
        assert_eq!(v["items"][0]["onset"], json!(0));
        assert_eq!(v["items"][0]["valid_to"], json!(6));
        let text = r.to_text();
        assert!(text.starts_with("[hilbert] valid through degree 6\n"));
        assert!(text.contains("  polynomial        n\n"));
    }

    #[test]
    fn skipped_check_item() {
        let c = Check {
            name: "x".into(),
            status: crate::homology::Status::Skipped,
            detail: "because".into(),
            valid_to: 3,
        };
        let item = Item::check(&c);
        assert_eq!(item.get("status"), Some(&json!("skipped")));
        assert_eq!(item.get("detail"), Some(&json!("because")));
    }
}
