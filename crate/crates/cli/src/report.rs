//! Reports rendered either as aligned text or as a single JSON object.
//!
//! Exact rationals are carried as `num/den` strings and dyadics as
//! `m*2^-e`, so JSON never contains a float.

use serde_json::{Map, Value};

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub params: Vec<(&'static str, Value)>,
    pub result: Vec<(&'static str, Value)>,
    pub table: Option<(&'static str, Table)>,
    /// Raw text lines of a produced object, shown when it is not written to a file.
    pub output: Option<Vec<String>>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            params: Vec::new(),
            result: Vec::new(),
            table: None,
            output: None,
        }
    }

    pub fn param(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.params.push((key, value.into()));
        self
    }

    pub fn field(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.result.push((key, value.into()));
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json().to_string() + "\n"
        } else {
            self.to_text()
        }
    }

    pub fn to_json(&self) -> Value {
        let obj = |pairs: &[(&'static str, Value)]| -> Map<String, Value> {
            pairs
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect()
        };
        let mut result = obj(&self.result);
        if let Some((name, table)) = &self.table {
            let rows = table
                .rows
                .iter()
                .map(|row| {
                    let m: Map<String, Value> = table
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), v.clone()))
                        .collect();
                    Value::Object(m)
                })
                .collect();
            result.insert(name.to_string(), Value::Array(rows));
        }
        if let Some(lines) = &self.output {
            let items = lines.iter().cloned().map(Value::String).collect();
            result.insert("output".into(), Value::Array(items));
        }
        let mut top = Map::new();
        top.insert("command".into(), Value::String(self.command.clone()));
        top.insert("parameters".into(), Value::Object(obj(&self.params)));
        top.insert("result".into(), Value::Object(result));
        Value::Object(top)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("predict {}\n", self.command);
        for (k, v) in &self.params {
            out += &format!("  {k}: {}\n", cell(v));
        }
        if !self.result.is_empty() {
            out += "result\n";
            for (k, v) in &self.result {
                out += &format!("  {k}: {}\n", cell(v));
            }
        }
        if let Some((name, table)) = &self.table {
            out += &format!("{name}\n");
            let cells: Vec<Vec<String>> = table
                .rows
                .iter()
                .map(|r| r.iter().map(cell).collect())
                .collect();
            let widths: Vec<usize> = table
                .columns
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    cells
                        .iter()
                        .map(|r| r[i].len())
                        .chain([c.len()])
                        .max()
                        .unwrap_or(0)
                })
                .collect();
            let line = |items: Vec<&str>| -> String {
                let padded: Vec<String> = items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect();
                format!("  {}\n", padded.join("  "))
            };
            out += &line(table.columns.clone());
            for row in &cells {
                out += &line(row.iter().map(String::as_str).collect());
            }
        }
        if let Some(lines) = &self.output {
            out += "output\n";
            for l in lines {
                out += &format!("  {l}\n");
            }
        }
        out
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "none".into(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}
