//! Report envelopes and output formats.
//!
//! Every run emits one envelope carrying the command, the hash of the spec
//! it ran, the seed, and the payload.  The same envelope renders as JSON
//! (canonical, byte-stable), CSV, or Markdown.

use crate::ramsey::ExperimentReport;
use crate::rational::rat_to_string;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "json" => Some(Format::Json),
            "csv" => Some(Format::Csv),
            "md" => Some(Format::Md),
            _ => None,
        }
    }
}

/// Hash of the spec a report was produced from, so artifacts are
/// self-describing: `sha256:<hex>` over the canonical JSON text.
pub fn spec_hash(spec: &Value) -> String {
    let mut hasher = Sha256::new();
    hasher.update(spec.to_string().as_bytes());
    let digest = hasher.finalize();
    let mut out = String::with_capacity(7 + 2 * digest.len());
    out.push_str("sha256:");
    for byte in digest {
        let _ = write!(out, "{byte:02x}");
    }
    out
}

#[derive(Debug, Clone)]
pub struct Envelope {
    pub command: String,
    pub spec_hash: String,
    pub seed: u64,
    pub payload: Value,
    /// Present when the payload wraps an experiment, so CSV and Markdown can
    /// render its family rows as a table.
    pub experiment: Option<ExperimentReport>,
}

impl Envelope {
    pub fn new(command: &str, spec: &Value, seed: u64, payload: Value) -> Self {
        Envelope {
            command: command.into(),
            spec_hash: spec_hash(spec),
            seed,
            payload,
            experiment: None,
        }
    }

    pub fn with_experiment(mut self, report: ExperimentReport) -> Self {
        self.experiment = Some(report);
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "spec_hash": self.spec_hash,
            "seed": self.seed,
            "report": self.payload,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json())
                    .expect("report JSON serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Md => self.render_md(),
        }
    }

    fn render_csv(&self) -> String {
        match &self.experiment {
            Some(report) => experiment_csv(report),
            None => {
                let mut out = String::from("key;value\n");
                out.push_str(&format!("command;{}\n", self.command));
                out.push_str(&format!("spec_hash;{}\n", self.spec_hash));
                out.push_str(&format!("seed;{}\n", self.seed));
                flatten_csv(&self.payload, "report", &mut out);
                out
            }
        }
    }

    fn render_md(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# hyperconv {}", self.command);
        let _ = writeln!(out);
        let _ = writeln!(out, "- spec: `{}`", self.spec_hash);
        let _ = writeln!(out, "- seed: {}", self.seed);
        match &self.experiment {
            Some(report) => {
                let _ = writeln!(out, "- structure: {}", report.structure);
                let _ = writeln!(out, "- coloring: {}", report.coloring);
                let _ = writeln!(out, "- criterion: {}", report.criterion);
                let _ = writeln!(
                    out,
                    "- depth {} on {}; {} cases",
                    report.depth, report.window, report.cases
                );
                let _ = writeln!(
                    out,
                    "- verdict: **{}**{}",
                    report.verdict.label(),
                    match report.witness_class {
                        Some(c) => format!(" (class {c})"),
                        None => String::new(),
                    }
                );
                if !report.sequence.is_empty() {
                    let _ = writeln!(
                        out,
                        "- sequence: {}",
                        report
                            .sequence
                            .iter()
                            .map(|x| x.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
                if !report.rows.is_empty() {
                    let _ = writeln!(out);
                    let _ = writeln!(out, "| F | support | class | mass |");
                    let _ = writeln!(out, "|---|---------|-------|------|");
                    for row in &report.rows {
                        for (i, mass) in row.masses.iter().enumerate() {
                            let _ = writeln!(
                                out,
                                "| {} | {} | {} | {} |",
                                family_label(&row.indices),
                                support_label(&row.support),
                                i + 1,
                                rat_to_string(mass)
                            );
                        }
                    }
                }
            }
            None => {
                let _ = writeln!(out);
                let _ = writeln!(out, "```json");
                let _ = write!(
                    out,
                    "{}",
                    serde_json::to_string_pretty(&self.payload).expect("payload serializes")
                );
                let _ = writeln!(out);
                let _ = writeln!(out, "```");
            }
        }
        out
    }
}

fn family_label(indices: &[usize]) -> String {
    format!(
        "{{{}}}",
        indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

fn support_label(support: &[crate::carrier::CarrierElement]) -> String {
    format!(
        "{{{}}}",
        support
            .iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(",")
    )
}

/// One CSV line per family × class, masses split into exact numerator and
/// denominator columns.
pub fn experiment_csv(report: &ExperimentReport) -> String {
    let mut out = String::from("F;support;class;mass_num;mass_den\n");
    for row in &report.rows {
        for (i, mass) in row.masses.iter().enumerate() {
            let _ = writeln!(
                out,
                "{};{};{};{};{}",
                family_label(&row.indices),
                support_label(&row.support),
                i + 1,
                mass.numer(),
                mass.denom()
            );
        }
    }
    out
}

fn flatten_csv(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, inner) in map {
                flatten_csv(inner, &format!("{prefix}.{k}"), out);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten_csv(inner, &format!("{prefix}[{i}]"), out);
            }
        }
        scalar => {
            let text = match scalar {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{prefix};{text}\n"));
        }
    }
}
