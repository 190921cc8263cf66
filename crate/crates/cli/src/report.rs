use std::collections::BTreeMap;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub weight: usize,
    pub words: usize,
    pub poly: usize,
}

/// What a subcommand found. Rendered as text or as one JSON object.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub verdict: bool,
    pub caps: Caps,
    pub window: (i64, i64),
    pub betti: Option<BTreeMap<i64, usize>>,
    pub witness: Option<String>,
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: &str, caps: Caps, window: (i64, i64)) -> Self {
        Report {
            command: command.to_string(),
            verdict: true,
            caps,
            window,
            betti: None,
            witness: None,
            lines: Vec::new(),
            data: Map::new(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        let text = text.into();
        self.lines.extend(text.lines().map(str::to_string));
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> Value {
        let betti = self.betti.as_ref().map(|b| {
            Value::Object(b.iter().map(|(d, n)| (d.to_string(), json!(n))).collect())
        });
        json!({
            "command": self.command,
            "verdict": self.verdict,
            "caps": { "weight": self.caps.weight, "words": self.caps.words, "poly": self.caps.poly },
            "window": [self.window.0, self.window.1],
            "betti": betti,
            "witness": self.witness,
            "details": self.lines,
            "data": Value::Object(self.data.clone()),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        if let Some(b) = &self.betti {
            let parts: Vec<String> = b.iter().map(|(d, n)| format!("H_{d}={n}")).collect();
            out.push_str(&format!("betti: {}\n", parts.join(" ")));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        out.push_str(&format!(
            "caps: weight {}, words {}, poly {}; window [{}, {}]\n",
            self.caps.weight, self.caps.words, self.caps.poly, self.window.0, self.window.1
        ));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }
}
