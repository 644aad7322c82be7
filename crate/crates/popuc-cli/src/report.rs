//! Human-readable reporting plus the flat-file artifacts: zero tables as CSV,
//! trial records and summaries as JSON.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use popuc_core::interlace::Verdict;
use popuc_core::popuc::SpectralDecomposition;
use serde::Serialize;

use crate::input::ParamsJson;
use crate::CliError;

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Strict => "STRICT",
        Verdict::Weak => "WEAK",
        Verdict::Fail => "FAIL",
    }
}

/// index, angle_radians, re, im, residual — one row per zero, shortest
/// round-trip decimals so the table is lossless and plottable.
pub fn zeros_csv(dec: &SpectralDecomposition) -> String {
    let mut out = String::from("index,angle_radians,re,im,residual\n");
    for (i, point) in dec.eigenvalues.iter().enumerate() {
        let z = point.to_complex();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            i,
            point.angle(),
            z.re,
            z.im,
            dec.residuals[i]
        ));
    }
    out
}

/// One verification trial: the seed and parameters to replay it, the verdict
/// fields (deterministic given the seed), and the wall time (informational,
/// excluded from the reproducibility contract).
#[derive(Debug, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub parameters: ParamsJson,
    pub checks: serde_json::Value,
    pub passed: bool,
    pub wall_ms: f64,
}

#[derive(Debug, Serialize)]
pub struct CampaignSummary {
    pub target: String,
    pub trials: usize,
    pub passed: usize,
    pub failed: usize,
    /// Worst observed value per named quantity (residuals, gaps).
    pub worst: BTreeMap<String, f64>,
    pub wall_ms_total: f64,
}

impl CampaignSummary {
    pub fn new(target: &str) -> Self {
        Self {
            target: target.to_string(),
            trials: 0,
            passed: 0,
            failed: 0,
            worst: BTreeMap::new(),
            wall_ms_total: 0.0,
        }
    }

    pub fn absorb(&mut self, record: &TrialRecord) {
        self.trials += 1;
        if record.passed {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
        self.wall_ms_total += record.wall_ms;
    }

    /// Track the maximum of a named quantity across trials.
    pub fn track_max(&mut self, key: &str, value: f64) {
        let entry = self.worst.entry(key.to_string()).or_insert(f64::NEG_INFINITY);
        if value > *entry {
            *entry = value;
        }
    }

    /// Track the minimum (for gaps and clearances).
    pub fn track_min(&mut self, key: &str, value: f64) {
        let entry = self.worst.entry(key.to_string()).or_insert(f64::INFINITY);
        if value < *entry {
            *entry = value;
        }
    }
}

/// Output selection parsed from `--format`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Formats {
    pub json: bool,
    pub csv: bool,
    pub svg: bool,
}

impl Formats {
    pub fn parse(spec: &str) -> Result<Self, CliError> {
        let mut f = Formats {
            json: false,
            csv: false,
            svg: false,
        };
        for part in spec.split(',') {
            match part.trim() {
                "json" => f.json = true,
                "csv" => f.csv = true,
                "svg" => f.svg = true,
                "" => {}
                other => {
                    return Err(CliError::Input(format!(
                        "unknown format '{other}' (expected json, csv, svg)"
                    )))
                }
            }
        }
        Ok(f)
    }
}

impl Default for Formats {
    fn default() -> Self {
        Formats {
            json: true,
            csv: false,
            svg: false,
        }
    }
}

pub struct OutputDir {
    dir: Option<PathBuf>,
}

impl OutputDir {
    pub fn new(dir: Option<PathBuf>) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)
                .map_err(|e| CliError::Input(format!("cannot create {}: {e}", d.display())))?;
        }
        Ok(Self { dir })
    }

    pub fn enabled(&self) -> bool {
        self.dir.is_some()
    }

    pub fn write(&self, name: &str, contents: &str) -> Result<Option<PathBuf>, CliError> {
        let Some(dir) = &self.dir else {
            return Ok(None);
        };
        let path = dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::Internal(format!("cannot write {}: {e}", path.display())))?;
        Ok(Some(path))
    }

    pub fn path(&self) -> Option<&Path> {
        self.dir.as_deref()
    }
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("serializable")
}
