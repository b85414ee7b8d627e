//! Run configuration files: TOML with one section per concern and per
//! problem. Unknown keys are rejected. Command-line flags override values
//! read from the file.
//!
//! ```toml
//! [run]
//! problem = 1
//! alpha = 0.5
//! t_max = 1.0
//! n_steps = 256
//! cells = 40
//! forcing = "bump:0.5,0.25*const:1"
//!
//! [problem1]
//! phi1 = "poly:2"
//! phi3 = "sin"
//!
//! [verify]
//! battery = "lemmas"
//! alphas = [0.3, 0.5]
//! t_list = [0.25, 1.0]
//!
//! [output]
//! out = "u.csv"
//! report = "report.toml"
//! threads = 4
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    #[serde(default)]
    pub run: RunSection,
    #[serde(default)]
    pub problem1: Problem1Section,
    #[serde(default)]
    pub problem2: Problem2Section,
    #[serde(default)]
    pub problem3: Problem3Section,
    #[serde(default)]
    pub verify: VerifySection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub problem: Option<u32>,
    pub alpha: Option<f64>,
    pub t_max: Option<f64>,
    pub n_steps: Option<usize>,
    pub cells: Option<usize>,
    /// Truncation length of the half-line problems.
    pub length: Option<f64>,
    pub forcing: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem1Section {
    pub phi1: Option<String>,
    pub phi2: Option<String>,
    pub phi3: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem2Section {
    pub psi1: Option<String>,
    pub psi2: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem3Section {
    pub psi: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub battery: Option<String>,
    pub alphas: Option<Vec<f64>>,
    pub t_list: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub out: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub densities: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(m) => CliError::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    /// Boundary presets of problem `n` given in the file, as (name, value).
    pub fn presets(&self, n: u32) -> Vec<(String, String)> {
        let pairs: Vec<(&str, &Option<String>)> = match n {
            1 => vec![("phi1", &self.problem1.phi1), ("phi2", &self.problem1.phi2), ("phi3", &self.problem1.phi3)],
            2 => vec![("psi1", &self.problem2.psi1), ("psi2", &self.problem2.psi2)],
            3 => vec![("psi", &self.problem3.psi)],
            _ => Vec::new(),
        };
        pairs.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k.to_string(), v))).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sections() {
        let c = FileConfig::parse(
            "[run]\nproblem = 2\nalpha = 0.5\n[problem2]\npsi1 = \"poly:2\"\n[verify]\nalphas = [0.3, 0.7]\n",
        )
        .unwrap();
        assert_eq!(c.run.problem, Some(2));
        assert_eq!(c.presets(2), vec![("psi1".to_string(), "poly:2".to_string())]);
        assert_eq!(c.verify.alphas, Some(vec![0.3, 0.7]));
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(FileConfig::parse("[run]\nalpah = 0.5\n").is_err());
        assert!(FileConfig::parse("[problem1]\npsi = \"sin\"\n").is_err());
        assert!(FileConfig::parse("[mystery]\n").is_err());
    }
}
