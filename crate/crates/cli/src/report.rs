//! Run reports: one section per verification stage, rendered for humans on
//! stdout and as JSON for machines.

use std::collections::BTreeMap;
use std::time::Instant;

use quasihopf::VerificationReport;
use serde_json::{json, Value};

use crate::{CliError, EXIT_MALFORMED, EXIT_PASS, EXIT_VIOLATION};

/// Witnesses kept per failed axiom in the JSON report.
const MAX_WITNESSES: usize = 8;

#[derive(Clone, Debug, Default)]
pub struct RunReport {
    command: String,
    stages: Vec<(String, VerificationReport)>,
    info: BTreeMap<String, Value>,
    timings: Vec<(String, f64)>,
    error: Option<(i32, String)>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.into(),
            ..Self::default()
        }
    }

    pub fn stage(&mut self, name: &str, report: VerificationReport) -> bool {
        let ok = report.passed();
        self.stages.push((name.into(), report));
        ok
    }

    pub fn stages(&self) -> &[(String, VerificationReport)] {
        &self.stages
    }

    pub fn info(&mut self, key: &str, value: impl Into<Value>) {
        self.info.insert(key.into(), value.into());
    }

    pub fn get_info(&self, key: &str) -> Option<&Value> {
        self.info.get(key)
    }

    pub fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.push((label.into(), start.elapsed().as_secs_f64() * 1e3));
        out
    }

    /// Records an error that stopped the run. Failed verifications carried
    /// by the error become a stage of their own.
    pub fn absorb(&mut self, err: CliError) {
        if let CliError::Math(quasihopf::Error::Verification { stage, report }) = err {
            self.stages.push((stage, report));
            return;
        }
        self.error = Some((err.exit_code(), err.to_string()));
    }

    pub fn passed(&self) -> bool {
        self.error.is_none() && self.stages.iter().all(|(_, r)| r.passed())
    }

    pub fn exit_code(&self) -> i32 {
        match &self.error {
            Some((code, _)) => *code,
            None if self.passed() => EXIT_PASS,
            None => EXIT_VIOLATION,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            EXIT_PASS => "pass",
            EXIT_MALFORMED => "error",
            _ => "fail",
        }
    }

    /// Axiom tags that failed in any stage.
    pub fn failed_axioms(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .stages
            .iter()
            .flat_map(|(_, r)| r.violated_axioms().into_iter().map(String::from).collect::<Vec<_>>())
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Everything except timings is a function of the inputs; timings are
    /// included only on request.
    pub fn to_json(&self, with_timings: bool) -> Value {
        let mut checks = Vec::new();
        for (stage, report) in &self.stages {
            for axiom in report.checks() {
                let hits: Vec<_> = report.violations().iter().filter(|v| &v.axiom == axiom).collect();
                let witnesses: Vec<_> = hits
                    .iter()
                    .take(MAX_WITNESSES)
                    .map(|v| json!({"at": v.witness, "lhs": v.lhs.to_string(), "rhs": v.rhs.to_string()}))
                    .collect();
                checks.push(json!({
                    "id": format!("{stage}/{axiom}"),
                    "stage": stage,
                    "axiom": axiom,
                    "result": if hits.is_empty() { "pass" } else { "fail" },
                    "violations": hits.len(),
                    "witnesses": witnesses,
                }));
            }
        }
        let mut out = json!({
            "command": self.command,
            "status": self.status(),
            "checks": checks,
            "info": self.info,
        });
        if let Some((_, msg)) = &self.error {
            out["error"] = json!(msg);
        }
        if with_timings {
            let t: BTreeMap<_, _> = self.timings.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
            out["timings_ms"] = json!(t);
        }
        out
    }

    pub fn to_json_string(&self, with_timings: bool) -> String {
        let mut s = String::new();
        crate::format::render(&self.to_json(with_timings), 0, &mut s);
        s.push('\n');
        s
    }

    pub fn human(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status().to_uppercase());
        for (stage, report) in &self.stages {
            out.push_str(&format!("{stage}\n{report}"));
        }
        for (k, v) in &self.info {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        if let Some((_, msg)) = &self.error {
            out.push_str(&format!("error: {msg}\n"));
        }
        out
    }
}
