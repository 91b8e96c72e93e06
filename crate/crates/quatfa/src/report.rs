//! Machine-readable reports for the verification suites. Reports are
//! deterministic for a fixed (seed, trials, spec); timing is kept out of
//! the serialized payload and printed separately on stderr.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub trials: u64,
    pub seed: u64,
    pub tolerance: f64,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip)]
    pub wall_time_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

pub fn render(reports: &[SuiteReport], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
            out.push('\n');
            out
        }
        ReportFormat::Text => {
            let mut out = String::new();
            for r in reports {
                let status = if r.pass { "PASS" } else { "FAIL" };
                out.push_str(&format!(
                    "{:<18} {} trials={} max_residual={:.3e} tol={:.1e}",
                    r.suite, status, r.trials, r.max_residual, r.tolerance
                ));
                for (k, v) in &r.values {
                    out.push_str(&format!(" {k}={v:.12}"));
                }
                if let Some(msg) = &r.message {
                    out.push_str(&format!(" [{msg}]"));
                }
                out.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.pass).count();
            out.push_str(&format!(
                "{} suites, {} passed, {} failed\n",
                reports.len(),
                reports.len() - failed,
                failed
            ));
            out
        }
    }
}
