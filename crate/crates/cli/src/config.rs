//! JSON config files and their merge with command-line flags.

use std::path::Path;

use serde::Deserialize;

use crate::args::BoundaryArg;
use crate::error::CliError;
use crate::record::Format;

/// A number list given either as a JSON array or a comma-separated string.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum NumberList {
    List(Vec<f64>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum NameList {
    List(Vec<String>),
    Text(String),
}

/// Every key is optional; flags on the command line win.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub lambda: Option<f64>,
    #[serde(alias = "lambda-c-r2")]
    pub lambda_c_r2: Option<f64>,
    #[serde(rename = "R", alias = "r")]
    pub r: Option<f64>,
    pub alpha: Option<f64>,
    pub theta: Option<f64>,
    pub gamma: Option<f64>,
    pub noiseless: Option<bool>,
    pub q: Option<f64>,
    pub xi: Option<f64>,
    pub c: Option<f64>,

    pub slots: Option<u64>,
    pub realizations: Option<usize>,
    #[serde(alias = "area-side")]
    pub area_side: Option<f64>,
    pub seed: Option<u64>,
    pub warmup: Option<f64>,
    pub cutoff: Option<f64>,
    pub boundary: Option<BoundaryArg>,

    pub output: Option<String>,
    pub format: Option<Format>,

    pub axis: Option<String>,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub count: Option<usize>,
    pub log: Option<bool>,
    pub values: Option<NumberList>,
    pub tasks: Option<NameList>,
}

impl ConfigFile {
    pub fn from_json_str(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json_str(&text)
    }
}
