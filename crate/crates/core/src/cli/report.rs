use std::fmt::Write as _;
use std::time::Instant;

use serde_json::{Map, Value};

/// Outcome of one command. Rendered as `key: value` lines or as a JSON object
/// with the fields `command`, `params`, `seed`, `outcome`, `metrics` and
/// `wall_time_ms`.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: String,
    pub params: Vec<(String, Value)>,
    pub seed: Option<u64>,
    pub outcome: String,
    pub metrics: Vec<(String, Value)>,
    pub wall_time_ms: f64,
    started: Instant,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport {
            command: command.into(),
            params: Vec::new(),
            seed: None,
            outcome: "ok".into(),
            metrics: Vec::new(),
            wall_time_ms: 0.0,
            started: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.params.push((key.into(), v.into()));
        self
    }

    pub fn metric(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.metrics.push((key.into(), v.into()));
        self
    }

    pub fn finish(&mut self) {
        self.wall_time_ms = self.started.elapsed().as_secs_f64() * 1e3;
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        for (k, v) in &self.params {
            let _ = writeln!(s, "param.{k}: {}", plain(v));
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        let _ = writeln!(s, "outcome: {}", self.outcome);
        for (k, v) in &self.metrics {
            let _ = writeln!(s, "{k}: {}", plain(v));
        }
        let _ = writeln!(s, "wall_time_ms: {:.3}", self.wall_time_ms);
        s
    }

    pub fn to_json(&self) -> String {
        let obj = |xs: &[(String, Value)]| Value::Object(xs.iter().cloned().collect::<Map<_, _>>());
        let mut m = Map::new();
        m.insert("command".into(), self.command.clone().into());
        m.insert("params".into(), obj(&self.params));
        m.insert("seed".into(), self.seed.map_or(Value::Null, Value::from));
        m.insert("outcome".into(), self.outcome.clone().into());
        m.insert("metrics".into(), obj(&self.metrics));
        m.insert("wall_time_ms".into(), self.wall_time_ms.into());
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json");
        s.push('\n');
        s
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
