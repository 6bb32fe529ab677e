//! Fixture corpus: one JSON object per file.
//!
//! ```text
//! {
//!   "name": "non-decomposable",
//!   "args": ["dj-member", "@0", "@1"],
//!   "inputs": [DerivJSON, FamilyJSON],
//!   "stdin": value?,
//!   "expected": {"exit": 0, "stdout": "..."}?
//! }
//! ```
//!
//! `@i` arguments name the `i`-th inline input. `args` may instead be a
//! list of command lines forming a pipeline, where each stdout feeds the
//! next command's stdin and only the last one is checked. Without an
//! `expected` block a fixture passes when it exits 0.

use std::collections::BTreeMap;
use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::Value;

use super::{run_with_inputs, Inputs, Outcome};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Args {
    Single(Vec<String>),
    Pipeline(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Deserialize)]
pub struct Expected {
    #[serde(default)]
    pub exit: i32,
    pub stdout: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub name: String,
    pub args: Args,
    #[serde(default)]
    pub inputs: Vec<Value>,
    pub stdin: Option<Value>,
    pub expected: Option<Expected>,
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

impl Fixture {
    /// Runs the fixture; `Err` carries the failure witness.
    pub fn check(&self) -> std::result::Result<(), String> {
        let files: BTreeMap<String, String> = self
            .inputs
            .iter()
            .enumerate()
            .map(|(i, v)| (format!("@{i}"), value_text(v)))
            .collect();
        let steps = match &self.args {
            Args::Single(a) => vec![a.clone()],
            Args::Pipeline(p) => p.clone(),
        };
        let mut stdin = self.stdin.as_ref().map(value_text).unwrap_or_default();
        let mut last: Option<Outcome> = None;
        for (k, argv) in steps.iter().enumerate() {
            if let Some(prev) = &last {
                if prev.code != 0 {
                    return Err(format!(
                        "step {k} exited {}: {}",
                        prev.code,
                        prev.stderr.trim()
                    ));
                }
                stdin = prev.stdout.clone();
            }
            last = Some(run_with_inputs(
                argv,
                &Inputs {
                    stdin: &stdin,
                    virtual_files: &files,
                },
            ));
        }
        let out = last.ok_or("no command")?;
        let (exit, stdout) = match &self.expected {
            Some(e) => (e.exit, e.stdout.as_deref()),
            None => (0, None),
        };
        if out.code != exit {
            let detail = out.stderr.lines().next().unwrap_or("");
            return Err(format!("exit {}, expected {exit} {detail}", out.code)
                .trim_end()
                .to_string());
        }
        if let Some(want) = stdout {
            let got = out.stdout.trim_end();
            let want = want.trim_end();
            if got != want {
                let (g, w): (Vec<&str>, Vec<&str>) =
                    (got.lines().collect(), want.lines().collect());
                let line = (0..g.len().max(w.len()))
                    .find(|&i| g.get(i) != w.get(i))
                    .unwrap_or(0);
                return Err(format!(
                    "stdout line {}: expected `{}`, got `{}`",
                    line + 1,
                    w.get(line).unwrap_or(&""),
                    g.get(line).unwrap_or(&"")
                ));
            }
        }
        Ok(())
    }
}

/// Text report and exit code of a corpus run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub code: i32,
    pub text: String,
    pub passed: usize,
    pub total: usize,
}

/// Runs every `*.json` fixture in `dir` (concurrently) and reports in
/// fixture-name order. Exit 0 iff all pass, 2 when the directory holds no
/// fixtures or some fixture is malformed.
pub fn run_corpus(dir: &Path) -> Result<CorpusReport> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::Schema(format!("cannot read `{}`: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Ok(CorpusReport {
            code: 2,
            text: "no fixtures".into(),
            passed: 0,
            total: 0,
        });
    }
    let mut results: Vec<(String, bool, std::result::Result<(), String>)> = paths
        .par_iter()
        .map(|p| {
            let fallback = p
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            let parsed = std::fs::read_to_string(p)
                .map_err(|e| e.to_string())
                .and_then(|t| serde_json::from_str::<Fixture>(&t).map_err(|e| e.to_string()));
            match parsed {
                Ok(f) => (f.name.clone(), false, f.check()),
                Err(e) => (fallback, true, Err(format!("malformed fixture: {e}"))),
            }
        })
        .collect();
    results.sort_by(|a, b| a.0.cmp(&b.0));
    let mut lines = Vec::with_capacity(results.len() + 1);
    let mut passed = 0;
    for (name, _, r) in &results {
        match r {
            Ok(()) => {
                passed += 1;
                lines.push(format!("PASS {name}"));
            }
            Err(w) => lines.push(format!("FAIL {name}: {w}")),
        }
    }
    let total = results.len();
    lines.push(format!("passed {passed} / total {total}"));
    let code = if results.iter().any(|r| r.1) {
        2
    } else if passed == total {
        0
    } else {
        1
    };
    Ok(CorpusReport {
        code,
        text: lines.join("\n"),
        passed,
        total,
    })
}
