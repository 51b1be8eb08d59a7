//! Machine-readable run reports. Reports are byte-identical across repeated
//! runs with the same arguments and seed, so wall-clock timings go to
//! standard output only, never into the JSON.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use anyhow::Context;
use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub verdicts: Vec<Verdict>,
    pub result: serde_json::Value,
    pub result_sha256: String,
}

pub struct ReportBuilder {
    command: String,
    parameters: BTreeMap<String, String>,
    seed: Option<u64>,
    verdicts: Vec<Verdict>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        ReportBuilder {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            seed: None,
            verdicts: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn seed(&mut self, seed: u64) -> &mut Self {
        self.seed = Some(seed);
        self
    }

    pub fn verdict(&mut self, name: &str, pass: bool, detail: impl ToString) -> &mut Self {
        let detail = detail.to_string();
        println!(
            "  [{}] {} {} ({:.3}s)",
            if pass { "pass" } else { "FAIL" },
            name,
            detail,
            self.started.elapsed().as_secs_f64()
        );
        self.verdicts.push(Verdict {
            name: name.to_string(),
            pass,
            detail,
        });
        self
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    /// Finalizes the report, optionally writes it, and prints the summary.
    pub fn finish(
        self,
        result: serde_json::Value,
        out: Option<&Path>,
    ) -> anyhow::Result<RunReport> {
        let payload = serde_json::to_vec(&result).context("serializing result")?;
        let digest = Sha256::digest(&payload);
        let result_sha256 = digest.iter().map(|b| format!("{b:02x}")).collect::<String>();
        let report = RunReport {
            command: self.command,
            parameters: self.parameters,
            seed: self.seed,
            verdicts: self.verdicts,
            result,
            result_sha256,
        };
        if let Some(path) = out {
            let text = serde_json::to_string_pretty(&report).context("serializing report")?;
            std::fs::write(path, text.as_bytes())
                .with_context(|| format!("writing report to {}", path.display()))?;
            println!("report written to {} (sha256 of result: {})", path.display(), report.result_sha256);
        }
        println!(
            "{}: {} in {:.3}s",
            report.command,
            if report.verdicts.iter().all(|v| v.pass) {
                "ok"
            } else {
                "verdict failure"
            },
            self.started.elapsed().as_secs_f64()
        );
        Ok(report)
    }
}
