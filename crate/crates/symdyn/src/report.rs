//! Structured command reports.

use serde::Serialize;
use serde_json::{json, Map, Value};
use symdyn_core::check::Witness;
use symdyn_core::{Group, Sft};

use crate::format::{pattern_to_cells, GroupSpec};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_PASS: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_CANDIDATES: i32 = 3;
pub const EXIT_MALFORMED: i32 = 64;

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub argv: Vec<String>,
    pub params: Value,
    pub verdict: String,
    pub exit_code: i32,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub timing: Timing,
    pub version: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Outcome of a command before timing and argv are attached.
pub struct Outcome {
    pub verdict: String,
    pub exit_code: i32,
    pub details: Value,
    pub witness: Option<Value>,
}

impl Outcome {
    pub fn new(verdict: &str, exit_code: i32, details: Value) -> Outcome {
        Outcome { verdict: verdict.into(), exit_code, details, witness: None }
    }

    pub fn with_witness(mut self, w: Value) -> Outcome {
        self.witness = Some(w);
        self
    }
}

/// Numeric alphabet `0..n`.
pub fn numeric(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// A checker witness with patterns in the SFT cell-map encoding.
/// `alphabets[i]` names the symbols of source track `i`; `output` those of the maps.
pub fn witness_json(group: Group, w: &Witness, alphabets: &[Vec<String>], output: &[String]) -> Value {
    let tracks: Vec<Value> = w
        .inputs
        .iter()
        .zip(alphabets)
        .map(|(p, a)| json!({ "alphabet": a, "pattern": pattern_to_cells(p, a) }))
        .collect();
    let outputs: Vec<Value> = w
        .outputs
        .iter()
        .map(|(m, e, s)| {
            let name = output.get(*s as usize).cloned().unwrap_or_else(|| s.to_string());
            json!({ "map": m, "cell": e.to_string(), "symbol": name })
        })
        .collect();
    json!({ "group": GroupSpec::of(group), "tracks": tracks, "outputs": outputs, "goal": w.goal })
}

pub fn sft_summary(x: &Sft) -> Value {
    let mut m = Map::new();
    m.insert("group".into(), json!(GroupSpec::of(x.group)));
    m.insert("alphabet".into(), json!(x.alphabet));
    m.insert("window_size".into(), json!(x.window.len()));
    m.insert("forbidden".into(), json!(x.forbidden.len()));
    Value::Object(m)
}
