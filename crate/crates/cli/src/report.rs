//! Reports: a serializable document plus a line-oriented text rendering.
//! Both are deterministic for a fixed scenario, seed and version.

use std::fmt::Write;

use serde::Serialize;
use serde_json::Value;

use crate::scenario::{Built, Scenario, SCHEMA_VERSION};
use crate::tasks::{Status, TaskResult};

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub schema_version: u32,
    pub seed: u64,
    pub scenarios: Vec<ScenarioReport>,
    pub passed: bool,
}

#[derive(Debug, Serialize)]
pub struct ScenarioReport {
    pub name: String,
    pub objects: Objects,
    pub tasks: Vec<TaskResult>,
    pub passed: bool,
    pub scenario: Scenario,
}

#[derive(Debug, Serialize)]
pub struct Objects {
    pub field: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub algebra_dimension: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group_order: Option<usize>,
    pub modules: Vec<ModuleSummary>,
}

#[derive(Debug, Serialize)]
pub struct ModuleSummary {
    pub name: String,
    pub dimension: usize,
}

impl ScenarioReport {
    pub fn new(fallback_name: &str, built: Built, tasks: Vec<TaskResult>) -> ScenarioReport {
        let f = &built.field;
        let field = if f.degree() == 1 {
            format!("F_{}", f.characteristic())
        } else {
            format!("F_{}^{}", f.characteristic(), f.degree())
        };
        let objects = Objects {
            field,
            algebra_dimension: built.action.as_ref().map(|a| a.algebra().dim()),
            group_order: built.action.as_ref().map(|a| a.group().order()),
            modules: built
                .modules
                .iter()
                .map(|(n, m)| ModuleSummary {
                    name: n.clone(),
                    dimension: m.dim(),
                })
                .collect(),
        };
        let passed = tasks.iter().all(|t| t.status == Status::Pass);
        ScenarioReport {
            name: built.scenario.name.clone().unwrap_or_else(|| fallback_name.to_string()),
            objects,
            tasks,
            passed,
            scenario: built.scenario,
        }
    }
}

impl Report {
    pub fn new(seed: u64, scenarios: Vec<ScenarioReport>) -> Report {
        let passed = scenarios.iter().all(|s| s.passed);
        Report {
            tool: "orbitcat",
            version: env!("CARGO_PKG_VERSION"),
            schema_version: SCHEMA_VERSION,
            seed,
            scenarios,
            passed,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(
            w,
            "{} {}, schema {}, seed {}",
            self.tool, self.version, self.schema_version, self.seed
        );
        for s in &self.scenarios {
            let _ = writeln!(w, "scenario {}", s.name);
            let o = &s.objects;
            let mut line = format!("  field {}", o.field);
            if let Some(d) = o.algebra_dimension {
                let _ = write!(line, ", algebra dimension {d}");
            }
            if let Some(g) = o.group_order {
                let _ = write!(line, ", acting group of order {g}");
            }
            let _ = writeln!(w, "{line}");
            for m in &o.modules {
                let _ = writeln!(w, "  module {}: dimension {}", m.name, m.dimension);
            }
            for t in &s.tasks {
                let target = t.target.as_ref().map(|x| format!(" [{x}]")).unwrap_or_default();
                let status = if t.status == Status::Pass { "PASS" } else { "FAIL" };
                let time = t.millis.map(|ms| format!(" ({ms} ms)")).unwrap_or_default();
                let _ = writeln!(w, "  task {}{target}: {status}{time}", t.task);
                for f in &t.facts {
                    let cert = f.certificate.as_ref().map(|c| format!(" ({c})")).unwrap_or_default();
                    let _ = writeln!(w, "    {}: {}{cert}", f.key, show(&f.value));
                }
                if let Some(e) = &t.error {
                    let _ = writeln!(w, "    error: {e}");
                }
                for why in &t.failures {
                    let _ = writeln!(w, "    FAILED {why}");
                }
            }
        }
        let failed = self.scenarios.iter().filter(|s| !s.passed).count();
        let _ = writeln!(
            w,
            "overall: {} ({} scenarios, {failed} failed)",
            if self.passed { "PASS" } else { "FAIL" },
            self.scenarios.len()
        );
        out
    }
}

fn show(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
