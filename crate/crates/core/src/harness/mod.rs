//! Seeded verification suites and their persisted reports.
//!
//! Every suite is deterministic for a fixed configuration: samples come from
//! per-item ChaCha streams and parallel work is collected in input order.

mod sample;
mod suites;

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::scalar::Mode;

pub use sample::{random_increasing, random_scalar, random_vector, rng_for};

/// Names accepted by [`run_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    NormOracle,
    TauOracle,
    FlatBounds,
    Jameson,
    Domination,
    Sigma,
    Mpb,
    Corollary,
    GlBounds,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::NormOracle,
        Suite::TauOracle,
        Suite::FlatBounds,
        Suite::Jameson,
        Suite::Domination,
        Suite::Sigma,
        Suite::Mpb,
        Suite::Corollary,
        Suite::GlBounds,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::NormOracle => "norm-oracle",
            Suite::TauOracle => "tau-oracle",
            Suite::FlatBounds => "lemma22",
            Suite::Jameson => "jameson",
            Suite::Domination => "domination",
            Suite::Sigma => "sigma",
            Suite::Mpb => "mpb",
            Suite::Corollary => "corollary64",
            Suite::GlBounds => "gl-bounds",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.as_str()).collect();
                Error::Parse(format!("unknown suite `{s}`; expected one of {}", names.join(", ")))
            })
    }
}

/// Sizes and seeds for a suite run. The defaults are the full batch sizes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub mode: Mode,
    /// Largest random support compared against the exhaustive norm oracle.
    pub max_support: usize,
    /// Overrides the number of random samples per batch.
    pub samples: Option<usize>,
    /// Longest flat-vector chain.
    pub m: usize,
    /// Largest index truncation.
    pub k: usize,
    /// Window for divergence witnesses.
    pub window: u64,
    /// Partition depth.
    pub n: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            mode: Mode::Exact,
            max_support: 9,
            samples: None,
            m: 20,
            k: 12,
            window: 8,
            n: 25,
        }
    }
}

impl SuiteConfig {
    pub(crate) fn samples_or(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }
}

/// One checked inequality over a batch of inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    /// Which inequality or identity was checked.
    pub check: String,
    /// SHA-256 of the canonical JSON of the inputs, hex.
    pub inputs_digest: String,
    /// Number of instances covered by the record.
    pub count: usize,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl CheckRecord {
    pub fn new(
        check: impl Into<String>,
        inputs: &Value,
        count: usize,
        expected: impl Into<String>,
        observed: impl Into<String>,
        pass: bool,
    ) -> Self {
        CheckRecord {
            check: check.into(),
            inputs_digest: digest(inputs),
            count,
            expected: expected.into(),
            observed: observed.into(),
            pass,
        }
    }

    /// A record for an operation that returned an error.
    pub fn failed(check: impl Into<String>, inputs: &Value, err: &Error) -> Self {
        CheckRecord::new(check, inputs, 1, "no error", format!("error: {err}"), false)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: SuiteConfig,
    /// Extra suite-specific parameters, such as constant windows.
    pub params: Value,
    pub records: Vec<CheckRecord>,
    pub checks: usize,
    pub failures: usize,
    pub passed: bool,
}

impl SuiteReport {
    pub fn new(suite: Suite, config: &SuiteConfig, params: Value, records: Vec<CheckRecord>) -> Self {
        let failures = records.iter().filter(|r| !r.pass).count();
        SuiteReport {
            suite: suite.to_string(),
            config: config.clone(),
            params,
            checks: records.len(),
            failures,
            passed: failures == 0,
            records,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// Pretty JSON with sorted keys.
    pub fn to_json_string(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).map_err(|e| Error::invalid(format!("csv: {e}")))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
    }

    /// Writes `<suite>.json` and `<suite>.csv` under `dir`.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf)> {
        let io = |e: std::io::Error| Error::invalid(format!("writing report: {e}"));
        fs::create_dir_all(dir).map_err(io)?;
        let json_path = dir.join(format!("{}.json", self.suite));
        let csv_path = dir.join(format!("{}.csv", self.suite));
        fs::write(&json_path, self.to_json_string()).map_err(io)?;
        fs::write(&csv_path, self.to_csv_string()?).map_err(io)?;
        Ok((json_path, csv_path))
    }
}

pub fn digest(inputs: &Value) -> String {
    let text = serde_json::to_string(inputs).expect("values serialize");
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<SuiteReport> {
    let (params, records) = match suite {
        Suite::NormOracle => suites::norm_oracle(config),
        Suite::TauOracle => suites::tau_oracle(config),
        Suite::FlatBounds => suites::flat_bounds(config),
        Suite::Jameson => suites::jameson(config),
        Suite::Domination => suites::domination(config),
        Suite::Sigma => suites::sigma(config),
        Suite::Mpb => suites::mpb(config),
        Suite::Corollary => suites::corollary(config),
        Suite::GlBounds => suites::gl_bounds(config),
    }?;
    Ok(SuiteReport::new(suite, config, params, records))
}
