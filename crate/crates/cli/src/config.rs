//! Run configuration. Defaults, then a key=value config file, then
//! command-line flags, each layer overriding the previous one.

use std::fs;
use std::path::{Path, PathBuf};

use crate::report::Format;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    /// truncation index for the direct Dirichlet engine
    pub dirichlet_terms: usize,
    /// extra acceleration depth for the eta engine
    pub eta_depth: usize,
    /// truncation index for limit/product gamma evaluations
    pub gamma_n: u64,
    /// cross-engine agreement tolerance for grids and sampled suites
    pub agreement_tol: f64,
    /// bracket width target for the zero scan
    pub zero_tol: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            format: Format::Csv,
            out: None,
            seed: 0,
            dirichlet_terms: 100_000,
            eta_depth: 0,
            gamma_n: 1_000_000,
            agreement_tol: 1e-8,
            zero_tol: 1e-4,
        }
    }
}

impl RunConfig {
    /// Apply one key=value pair. Unknown keys and unparsable values are
    /// hard errors so a typo cannot silently fall back to a default.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
            value
                .parse()
                .map_err(|_| format!("invalid value {value:?} for config key {key:?}"))
        }
        match key {
            "format" => {
                self.format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => return Err(format!("invalid value {value:?} for config key \"format\"")),
                }
            }
            "out" => self.out = Some(PathBuf::from(value)),
            "seed" => self.seed = parse(key, value)?,
            "dirichlet_terms" => {
                self.dirichlet_terms = parse(key, value)?;
                if self.dirichlet_terms == 0 {
                    return Err("dirichlet_terms must be positive".to_string());
                }
            }
            "eta_depth" => self.eta_depth = parse(key, value)?,
            "gamma_n" => {
                self.gamma_n = parse(key, value)?;
                if self.gamma_n == 0 {
                    return Err("gamma_n must be positive".to_string());
                }
            }
            "agreement_tol" => {
                self.agreement_tol = parse(key, value)?;
                if !(self.agreement_tol > 0.0) {
                    return Err("agreement_tol must be positive".to_string());
                }
            }
            "zero_tol" => {
                self.zero_tol = parse(key, value)?;
                if !(self.zero_tol >= 1e-6) {
                    return Err("zero_tol must be at least 1e-6".to_string());
                }
            }
            _ => return Err(format!("unknown config key {key:?}")),
        }
        Ok(())
    }

    pub fn load_file(&mut self, path: &Path) -> Result<(), String> {
        let text = fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", lineno + 1))?;
            self.apply(key.trim(), value.trim())
                .map_err(|e| format!("config line {}: {e}", lineno + 1))?;
        }
        Ok(())
    }
}
