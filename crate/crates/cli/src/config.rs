//! Run configuration: built-in defaults, then an optional JSON file, then flags.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use satseq_core::saturation::RankConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "SATSEQ_CACHE_DIR";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum CommandSpec {
    Table { d_min: usize, d_max: usize },
    Saturation { d: usize },
    Transvect { d: usize, expr: String, coeffs: Option<Vec<String>> },
    GordanVerify { d: usize },
    GordanDelta { d: usize, s: usize, t: usize },
    GordanThreshold { s: usize, d_max: usize },
    Splitting { d: usize },
    Decompose { d: usize, m: usize },
    VerifyPaper,
    Explore { d_max: usize, scan_d_max: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub format: OutputFormat,
    pub seed: u64,
    pub primes: usize,
    pub max_rows: usize,
    pub guard_max_rows: usize,
    /// Per sub-computation, in seconds.
    pub time_budget_secs: Option<u64>,
    pub certify: bool,
    pub cache_dir: Option<PathBuf>,
    pub use_cache: bool,
    pub command: Option<CommandSpec>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let rank = RankConfig::default();
        RunConfig {
            format: OutputFormat::Json,
            seed: rank.seed,
            primes: rank.primes,
            max_rows: rank.max_rows,
            guard_max_rows: rank.guard_max_rows,
            time_budget_secs: None,
            certify: false,
            cache_dir: None,
            use_cache: true,
            command: None,
        }
    }
}

/// Flag values; `None` leaves the file or default value in place.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub format: Option<OutputFormat>,
    pub seed: Option<u64>,
    pub primes: Option<usize>,
    pub max_rows: Option<usize>,
    pub guard_max_rows: Option<usize>,
    pub time_budget_secs: Option<u64>,
    pub certify: bool,
    pub cache_dir: Option<PathBuf>,
    pub no_cache: bool,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::BadArgs(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::BadArgs(format!("bad config {}: {e}", path.display())))
    }

    pub fn resolve(file: Option<&Path>, flags: Overrides, command: CommandSpec) -> Result<Self, CliError> {
        let mut cfg = match file {
            Some(p) => Self::from_file(p)?,
            None => Self::default(),
        };
        if let Some(v) = flags.format {
            cfg.format = v;
        }
        if let Some(v) = flags.seed {
            cfg.seed = v;
        }
        if let Some(v) = flags.primes {
            cfg.primes = v;
        }
        if let Some(v) = flags.max_rows {
            cfg.max_rows = v;
        }
        if let Some(v) = flags.guard_max_rows {
            cfg.guard_max_rows = v;
        }
        if flags.time_budget_secs.is_some() {
            cfg.time_budget_secs = flags.time_budget_secs;
        }
        cfg.certify |= flags.certify;
        if flags.cache_dir.is_some() {
            cfg.cache_dir = flags.cache_dir;
        }
        if cfg.cache_dir.is_none() {
            cfg.cache_dir = std::env::var_os(CACHE_ENV).map(PathBuf::from);
        }
        if flags.no_cache {
            cfg.use_cache = false;
        }
        if cfg.primes == 0 {
            return Err(CliError::BadArgs("at least one prime is required".into()));
        }
        cfg.command = Some(command);
        Ok(cfg)
    }

    /// Rank settings for one sub-computation, starting its time budget now.
    pub fn rank_config(&self) -> RankConfig {
        RankConfig {
            seed: self.seed,
            primes: self.primes,
            max_rows: self.max_rows,
            guard_max_rows: self.guard_max_rows,
            certify: self.certify,
            deadline: self
                .time_budget_secs
                .map(|s| Instant::now() + Duration::from_secs(s)),
        }
    }

    pub fn method_tag(&self) -> &'static str {
        if self.certify {
            "rational"
        } else {
            "modular"
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"seed": 7, "primes": 3, "format": "csv"}"#).unwrap();
        let flags = Overrides {
            seed: Some(11),
            ..Overrides::default()
        };
        let cfg = RunConfig::resolve(Some(&path), flags, CommandSpec::VerifyPaper).unwrap();
        assert_eq!(cfg.seed, 11);
        assert_eq!(cfg.primes, 3);
        assert_eq!(cfg.format, OutputFormat::Csv);
    }

    #[test]
    fn unknown_keys_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.json");
        std::fs::write(&path, r#"{"sead": 7}"#).unwrap();
        assert!(RunConfig::from_file(&path).is_err());
    }

    #[test]
    fn round_trip() {
        let mut cfg = RunConfig::default();
        cfg.command = Some(CommandSpec::Table { d_min: 4, d_max: 6 });
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&text).unwrap(), cfg);
    }
}
