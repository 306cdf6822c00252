//! Run configuration: defaults, an optional TOML file, and flag overrides,
//! applied in that order.

use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Deserialize;
use z4codes::distance::DistancePolicy;

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub workers: Option<usize>,
    pub rng_seed: Option<u64>,
    pub ci: Option<bool>,
    #[serde(default)]
    pub policy: PolicyFile,
    #[serde(default)]
    pub paths: PathsFile,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolicyFile {
    pub length_cutoff: Option<usize>,
    pub complexity_cutoff: Option<u32>,
    pub time_limit_secs: Option<u64>,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathsFile {
    pub bklc: Option<PathBuf>,
    pub db: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }
}

/// Overrides taken from the command line.
#[derive(Debug, Clone, Default)]
pub struct FlagOverrides {
    pub workers: Option<usize>,
    pub rng_seed: Option<u64>,
    pub ci: bool,
    pub length_cutoff: Option<usize>,
    pub complexity_cutoff: Option<u32>,
    pub time_limit_secs: Option<u64>,
    pub budget: Option<u64>,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub policy: DistancePolicy,
    pub workers: usize,
    pub rng_seed: Option<u64>,
    pub ci: bool,
    pub bklc: Option<PathBuf>,
    pub db: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn resolve(file: FileConfig, flags: &FlagOverrides) -> Result<Self, CliError> {
        let defaults = DistancePolicy::default();
        let policy = DistancePolicy {
            length_cutoff: flags.length_cutoff.or(file.policy.length_cutoff).unwrap_or(defaults.length_cutoff),
            complexity_cutoff: flags
                .complexity_cutoff
                .or(file.policy.complexity_cutoff)
                .unwrap_or(defaults.complexity_cutoff),
            time_limit: flags
                .time_limit_secs
                .or(file.policy.time_limit_secs)
                .map_or(defaults.time_limit, Duration::from_secs),
            budget: flags.budget.or(file.policy.budget).unwrap_or(defaults.budget),
        };
        let workers = flags
            .workers
            .or(file.workers)
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        let cfg = RunConfig {
            policy,
            workers,
            rng_seed: flags.rng_seed.or(file.rng_seed),
            ci: flags.ci || file.ci.unwrap_or(false),
            bklc: file.paths.bklc,
            db: file.paths.db,
            out: file.paths.out,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: &str| Err(CliError::Validation(m.to_string()));
        if self.workers == 0 {
            return bad("worker count must be at least 1");
        }
        if self.policy.length_cutoff == 0 || self.policy.complexity_cutoff == 0 {
            return bad("distance cutoffs must be positive");
        }
        if self.policy.time_limit.is_zero() {
            return bad("time limit must be positive");
        }
        if self.policy.budget == 0 {
            return bad("enumeration budget must be positive");
        }
        Ok(())
    }
}
