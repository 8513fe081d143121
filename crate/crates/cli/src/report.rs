//! Command outcomes, their text and JSON renderings, and exit codes.

use serde_json::{json, Value};

use crate::format::LoadError;

pub const SCHEMA: u32 = 1;

/// What a command found. `ok` decides the exit status: 0 when true, 1
/// when false.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub kind: String,
    pub ok: bool,
    pub witness: Option<Value>,
    pub data: Value,
    /// Human-readable lines.
    pub lines: Vec<String>,
    /// Graphviz text when the command has a graph and `--dot` was given.
    pub dot: Option<String>,
    /// A time or step limit cut the computation short.
    pub incomplete: bool,
}

impl Report {
    pub fn new(kind: &str, ok: bool) -> Report {
        Report { kind: kind.to_string(), ok, witness: None, data: json!({}), lines: Vec::new(), dot: None, incomplete: false }
    }

    pub fn line(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(s.into());
        self
    }

    pub fn json(&self) -> Value {
        json!({
            "schema": SCHEMA,
            "kind": self.kind,
            "ok": self.ok,
            "witness": self.witness,
            "data": self.data,
        })
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.incomplete {
            3
        } else if self.ok {
            0
        } else {
            1
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error(transparent)]
    Engine(#[from] kancalc::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Engine(kancalc::Error::BudgetExceeded { .. } | kancalc::Error::Timeout { .. }) => 3,
            _ => 2,
        }
    }

    pub fn json(&self, kind: &str) -> Value {
        json!({
            "schema": SCHEMA,
            "kind": kind,
            "ok": false,
            "witness": null,
            "data": { "error": self.to_string(), "exit": self.exit_code() },
        })
    }
}
