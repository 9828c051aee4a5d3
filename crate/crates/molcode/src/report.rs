//! Report headers and plain-text tables.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One hashed input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Settings that shaped a run. Paths of outputs and the worker count are
/// left out so that the echo does not vary between equivalent runs.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub settings: BTreeMap<String, Value>,
    pub inputs: Vec<InputDigest>,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            ..Default::default()
        }
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.settings.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable setting"),
        );
        self
    }

    pub fn input(&mut self, path: &str, sha256: &str) -> &mut Self {
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: sha256.to_string(),
        });
        self
    }

    /// `#`-prefixed header lines.
    pub fn header(&self) -> String {
        let mut s = format!("# molcode {VERSION}\n# command {}\n", self.command);
        s += &format!("# config {}\n", serde_json::to_string(&self.settings).expect("json"));
        for i in &self.inputs {
            s += &format!("# input {} sha256={}\n", i.path, i.sha256);
        }
        s
    }

    /// Header as a JSON object for machine-readable reports.
    pub fn header_json(&self) -> Value {
        serde_json::json!({
            "tool": "molcode",
            "version": VERSION,
            "command": self.command,
            "config": self.settings,
            "inputs": self.inputs,
        })
    }
}

/// Left-aligned columns separated by two spaces.
#[derive(Clone, Debug, Default)]
pub struct TextTable {
    rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new<S: ToString>(header: &[S]) -> Self {
        TextTable {
            rows: vec![header.iter().map(|s| s.to_string()).collect()],
        }
    }

    pub fn row<S: ToString>(&mut self, cells: &[S]) {
        self.rows.push(cells.iter().map(|s| s.to_string()).collect());
    }

    pub fn render(&self) -> String {
        let cols = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..cols)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for r in &self.rows {
            let mut line = String::new();
            for (c, cell) in r.iter().enumerate() {
                if c > 0 {
                    line.push_str("  ");
                }
                line.push_str(cell);
                line.extend(std::iter::repeat_n(' ', widths[c] - cell.chars().count()));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_lines() {
        let mut c = RunConfig::new("coverage");
        c.set("mode", "skeleton").set("epsilon", 1e-9).input("a.jsonl", "00ff");
        let h = c.header();
        assert!(h.starts_with("# molcode "));
        assert!(h.contains("# config {\"epsilon\":1e-9,\"mode\":\"skeleton\"}\n"));
        assert!(h.ends_with("# input a.jsonl sha256=00ff\n"));
    }

    #[test]
    fn aligned() {
        let mut t = TextTable::new(&["metric", "a"]);
        t.row(&["gcn0", "12"]);
        assert_eq!(t.render(), "metric  a\ngcn0    12\n");
    }
}
