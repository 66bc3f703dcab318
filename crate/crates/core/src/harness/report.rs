//! Reports: rows of exact counts and estimates plus named assertions.

use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::Result;

use super::config::ExperimentConfig;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub n: usize,
    #[serde(serialize_with = "crate::numfmt::ser_big")]
    pub count: BigUint,
    #[serde(serialize_with = "crate::numfmt::ser_f64")]
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Row {
    pub fn new(n: usize, count: impl Into<BigUint>, value: f64) -> Self {
        Row {
            n,
            count: count.into(),
            value,
            label: None,
        }
    }

    pub fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Assertion {
    pub name: String,
    /// The invariant this check instantiates.
    pub invariant: String,
    pub passed: bool,
    pub detail: String,
}

/// Which quantity the `value` column of the rows holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ValueKind {
    Estimate,
    Ratio,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub config_hash: String,
    pub target: String,
    pub seed: u64,
    pub value_kind: ValueKind,
    pub rows: Vec<Row>,
    /// Witnesses and other structured results.
    pub records: serde_json::Map<String, serde_json::Value>,
    pub assertions: Vec<Assertion>,
    pub passed: bool,
}

impl Report {
    pub fn new(config: &ExperimentConfig, target: impl Into<String>) -> Self {
        let digest = Sha256::digest(config.canonical_json().as_bytes());
        Report {
            config_hash: format!("{digest:x}"),
            target: target.into(),
            seed: config.seed,
            value_kind: ValueKind::Estimate,
            rows: Vec::new(),
            records: serde_json::Map::new(),
            assertions: Vec::new(),
            passed: true,
        }
    }

    pub fn check(
        &mut self,
        name: impl Into<String>,
        invariant: impl Into<String>,
        passed: bool,
        detail: impl Into<String>,
    ) -> bool {
        self.passed &= passed;
        self.assertions.push(Assertion {
            name: name.into(),
            invariant: invariant.into(),
            passed,
            detail: detail.into(),
        });
        passed
    }

    pub fn record(&mut self, key: impl Into<String>, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report records serialize");
        self.records.insert(key.into(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// `n,count,ratio` for densities and `n,count,estimate` otherwise.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let value_header = match self.value_kind {
            ValueKind::Ratio => "ratio",
            ValueKind::Estimate => "estimate",
        };
        w.write_record(["n", "count", value_header])?;
        for row in &self.rows {
            w.write_record([
                row.n.to_string(),
                row.count.to_string(),
                crate::numfmt::round12(row.value).to_string(),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(report: &Report, format: Format, path: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
