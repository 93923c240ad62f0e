//! Machine-readable run reports: JSON, CSV and plain-text rendering with
//! lossless floating-point output.

use serde::{Deserialize, Serialize};

use crate::chains::ChainVerdict;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// One evaluated (chain, input) with its provenance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub class: String,
    pub n: usize,
    pub sample_index: usize,
    /// Parameter description, e.g. "f=t^2 alpha=0.25"; empty when unused.
    pub params: String,
    pub verdict: ChainVerdict,
}

/// Mean/min normalized gap for one consecutive term pair of a chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GapStat {
    pub from: String,
    pub to: String,
    pub mean: f64,
    pub min: f64,
}

/// Tightness statistics aggregated per chain.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainTightness {
    pub chain_id: String,
    pub samples: usize,
    pub gaps: Vec<GapStat>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub worst_slack: f64,
    pub tightness: Vec<ChainTightness>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub command: String,
    pub config: serde_json::Value,
    pub verdicts: Vec<VerdictRecord>,
    pub summary: Summary,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One verdict per row; term labels and values are `;`-joined columns.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "chain_id,class,n,sample_index,params,term_labels,term_values,min_slack,pass\n",
        );
        for r in &self.verdicts {
            let labels: Vec<&str> = r.verdict.term_values.iter().map(|t| t.0.as_str()).collect();
            let values: Vec<String> = r
                .verdict
                .term_values
                .iter()
                .map(|t| format!("{:.17e}", t.1))
                .collect();
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{:.17e},{}\n",
                r.verdict.chain_id,
                r.class,
                r.n,
                r.sample_index,
                r.params,
                labels.join(";"),
                values.join(";"),
                r.verdict.min_slack,
                r.verdict.pass
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} v{}\ncommand: {}\n",
            "numrange report", self.tool_version, self.command
        ));
        for r in &self.verdicts {
            out.push_str(&format!(
                "[{}] {} class={} n={} sample={}{} min_slack={:.17e}\n",
                if r.verdict.pass { "PASS" } else { "FAIL" },
                r.verdict.chain_id,
                r.class,
                r.n,
                r.sample_index,
                if r.params.is_empty() {
                    String::new()
                } else {
                    format!(" {}", r.params)
                },
                r.verdict.min_slack,
            ));
            for (label, value) in &r.verdict.term_values {
                out.push_str(&format!("    {label} = {value:.17e}\n"));
            }
            for (label, value) in &r.verdict.metadata {
                out.push_str(&format!("    ({label} = {value:.17e})\n"));
            }
        }
        out.push_str(&format!(
            "summary: total={} passed={} failed={} worst_slack={:.17e}\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.worst_slack
        ));
        for tight in &self.summary.tightness {
            out.push_str(&format!(
                "tightness {} ({} samples):\n",
                tight.chain_id, tight.samples
            ));
            for gap in &tight.gaps {
                out.push_str(&format!(
                    "    {} -> {}: mean={:.6e} min={:.6e}\n",
                    gap.from, gap.to, gap.mean, gap.min
                ));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    Json,
    Csv,
    Text,
}

impl ReportFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "json" => Some(Self::Json),
            "csv" => Some(Self::Csv),
            "text" => Some(Self::Text),
            _ => None,
        }
    }

    pub fn render(&self, report: &RunReport) -> String {
        match self {
            Self::Json => report.to_json(),
            Self::Csv => report.to_csv(),
            Self::Text => report.to_text(),
        }
    }
}
