//! JSON parameter ingestion and emission.
//!
//! Schema: `{"alphas": [[re, im], ...], "b": [re, im]}`, or a batch under
//! `{"cases": [ ... ]}`. Serialization uses shortest-round-trip decimal, so
//! `parse(emit(p))` reproduces the doubles exactly.

use num_complex::Complex64;
use popuc_core::ParameterArray;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ParamsJson {
    pub alphas: Vec<[f64; 2]>,
    pub b: [f64; 2],
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum InputJson {
    Cases { cases: Vec<ParamsJson> },
    Single(ParamsJson),
}

impl ParamsJson {
    pub fn from_params(p: &ParameterArray) -> Self {
        Self {
            alphas: p.alphas().iter().map(|a| [a.re, a.im]).collect(),
            b: [p.b().re, p.b().im],
        }
    }

    pub fn to_params(&self) -> Result<ParameterArray, CliError> {
        let alphas: Vec<Complex64> = self
            .alphas
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ParameterArray::new(alphas, Complex64::new(self.b[0], self.b[1]))
            .map_err(|e| CliError::Input(e.to_string()))
    }
}

/// Reads one or more parameter arrays from a JSON file.
pub fn parse_input(path: &std::path::Path) -> Result<Vec<ParameterArray>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    parse_input_str(&text)
}

pub fn parse_input_str(text: &str) -> Result<Vec<ParameterArray>, CliError> {
    let parsed: InputJson = serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("malformed JSON: {e}")))?;
    let raw = match parsed {
        InputJson::Single(p) => vec![p],
        InputJson::Cases { cases } => cases,
    };
    if raw.is_empty() {
        return Err(CliError::Input("no cases in input".into()));
    }
    raw.iter().map(|p| p.to_params()).collect()
}

pub fn emit_json(p: &ParameterArray) -> String {
    serde_json::to_string_pretty(&ParamsJson::from_params(p)).expect("serializable")
}
