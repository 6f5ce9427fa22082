//! Run reports and their three renderings.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Serialize, Serializer};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// Passed, but some input is only heuristically known.
    PassStar,
    Fail,
}

impl Verdict {
    pub fn of(ok: bool, exact: bool) -> Self {
        match (ok, exact) {
            (false, _) => Verdict::Fail,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::PassStar,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::PassStar => "PASS*",
            Verdict::Fail => "FAIL",
        }
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Row {
    pub id: String,
    pub verdict: Verdict,
    pub exact: bool,
    pub detail: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
    #[serde(skip)]
    pub key: Vec<i64>,
}

impl Row {
    pub fn new(id: impl Into<String>, key: Vec<i64>, ok: bool, exact: bool) -> Self {
        Row { id: id.into(), verdict: Verdict::of(ok, exact), exact, detail: BTreeMap::new(), repro: None, key }
    }

    pub fn with(mut self, k: &str, v: impl Serialize) -> Self {
        self.detail.insert(k.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Inputs {
    pub files: Vec<String>,
    pub params: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub prime: u32,
}

#[derive(Clone, Debug, Default, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Summary {
    pub pass: usize,
    pub pass_star: usize,
    pub fail: usize,
}

/// Everything a command produced. Timings live outside the serialized
/// report so reruns give byte-identical JSON.
#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Inputs,
    pub results: BTreeMap<String, Value>,
    pub rows: Vec<Row>,
    pub summary: Summary,
    #[serde(skip)]
    pub text: Vec<String>,
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl RunReport {
    pub fn new(command: impl Into<String>, prime: u32) -> Self {
        RunReport { command: command.into(), inputs: Inputs { prime, ..Inputs::default() }, ..RunReport::default() }
    }

    pub fn param(&mut self, k: &str, v: impl Serialize) {
        self.inputs.params.insert(k.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    pub fn result(&mut self, k: &str, v: impl Serialize) {
        self.results.insert(k.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    /// Runs `f` and records its wall time under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push((phase.to_string(), start.elapsed().as_secs_f64()));
        out
    }

    /// Sorts rows by parameters and fills in the summary.
    pub fn finish(&mut self) {
        self.rows.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.id.cmp(&b.id)));
        let count = |v: Verdict| self.rows.iter().filter(|r| r.verdict == v).count();
        self.summary = Summary { pass: count(Verdict::Pass), pass_star: count(Verdict::PassStar), fail: count(Verdict::Fail) };
    }

    pub fn failed(&self) -> bool {
        self.summary.fail > 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn timings_json(&self) -> String {
        let map: BTreeMap<&str, f64> = self.timings.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        let mut s = serde_json::to_string_pretty(&serde_json::json!({ "timings": map })).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut keys: Vec<&String> = self.rows.iter().flat_map(|r| r.detail.keys()).collect();
        keys.sort();
        keys.dedup();
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec!["id", "verdict", "exact"];
        header.extend(keys.iter().map(|k| k.as_str()));
        header.push("repro");
        w.write_record(&header).expect("in-memory write");
        for r in &self.rows {
            let mut rec = vec![r.id.clone(), r.verdict.as_str().to_string(), r.exact.to_string()];
            rec.extend(keys.iter().map(|k| r.detail.get(*k).map_or(String::new(), plain)));
            rec.push(r.repro.clone().unwrap_or_default());
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Human-readable form. Long grids only list their non-PASS rows.
    pub fn to_human(&self) -> String {
        let mut out = format!("{}\n", self.command);
        for (k, v) in &self.inputs.params {
            out.push_str(&format!("  {k} = {}\n", plain(v)));
        }
        for t in &self.text {
            out.push_str(t);
            if !t.ends_with('\n') {
                out.push('\n');
            }
        }
        let long = self.rows.len() > 40;
        let shown: Vec<&Row> = self.rows.iter().filter(|r| !long || r.verdict != Verdict::Pass).collect();
        let width = shown.iter().map(|r| r.id.len()).max().unwrap_or(0);
        for r in &shown {
            let detail: Vec<String> = r.detail.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            out.push_str(&format!("{:<5} {:<width$}  {}\n", r.verdict.as_str(), r.id, detail.join(" ")));
            if let Some(cmd) = &r.repro {
                if r.verdict == Verdict::Fail {
                    out.push_str(&format!("      reproduce: {cmd}\n"));
                }
            }
        }
        if long {
            out.push_str(&format!("({} PASS rows not shown)\n", self.rows.len() - shown.len()));
        }
        if !self.rows.is_empty() {
            let s = &self.summary;
            out.push_str(&format!("{} PASS, {} PASS*, {} FAIL\n", s.pass, s.pass_star, s.fail));
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
