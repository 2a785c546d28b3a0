//! Verification reports: per-case pass/fail with reproduction witnesses,
//! serialized as JSON, text, or CSV.

use std::time::Duration;

/// One verified case. The witness carries both computed values so a
/// failure can be reproduced in isolation from the report alone.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub key: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    pub detail: Option<String>,
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub parameters: serde_json::Value,
    pub cases: Vec<CaseResult>,
    pub duration: Duration,
}

impl Report {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed()
    }

    pub fn all_pass(&self) -> bool {
        self.failed() == 0
    }

    pub fn to_json(&self) -> serde_json::Value {
        let cases: Vec<serde_json::Value> = self
            .cases
            .iter()
            .map(|c| {
                let mut obj = serde_json::json!({
                    "key": c.key,
                    "pass": c.pass,
                });
                if !c.pass {
                    obj["witness"] = serde_json::json!({
                        "lhs": c.lhs,
                        "rhs": c.rhs,
                        "detail": c.detail,
                    });
                }
                obj
            })
            .collect();
        serde_json::json!({
            "command": self.command,
            "parameters": self.parameters,
            "cases": cases,
            "passed": self.passed(),
            "failed": self.failed(),
            "duration_ms": self.duration.as_millis() as u64,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let status = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("{status}  {}\n", c.key));
            if !c.pass {
                out.push_str(&format!("      lhs: {}\n", c.lhs));
                out.push_str(&format!("      rhs: {}\n", c.rhs));
                if let Some(d) = &c.detail {
                    out.push_str(&format!("      {d}\n"));
                }
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed ({} ms)\n",
            self.command,
            self.passed(),
            self.failed(),
            self.duration.as_millis()
        ));
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("key,pass,lhs,rhs\n");
        for c in &self.cases {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_escape(&c.key),
                c.pass,
                csv_escape(&c.lhs),
                csv_escape(&c.rhs)
            ));
        }
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
