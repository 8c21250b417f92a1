use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use cobcalc::valuation::is_prime;
use serde::Deserialize;

use crate::args::{Cli, Format};

/// The brute-force expansion is never allowed past this total dimension.
pub const MAX_BRUTEFORCE_CAP: u64 = 16;

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct FileConfig {
    pub prime: Option<u64>,
    pub max_d: Option<u64>,
    pub max_weight: Option<u64>,
    pub format: Option<Format>,
    pub bruteforce_cap: Option<u64>,
    pub output: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub bruteforce_cap: u64,
    defaults: Defaults,
}

#[derive(Debug, Clone, Default)]
struct Defaults {
    prime: Option<u64>,
    max_d: Option<u64>,
    max_weight: Option<u64>,
}

impl RunConfig {
    pub fn resolve(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        let cap = cli
            .bruteforce_cap
            .or(file.bruteforce_cap)
            .unwrap_or(cobcalc::stong::DEFAULT_BRUTEFORCE_CAP);
        if cap > MAX_BRUTEFORCE_CAP {
            bail!("brute-force cap {cap} exceeds the maximum {MAX_BRUTEFORCE_CAP}");
        }
        let cfg = RunConfig {
            format: cli.format.or(file.format).unwrap_or(Format::Json),
            output: cli.output.clone().or(file.output),
            bruteforce_cap: cap,
            defaults: Defaults {
                prime: file.prime,
                max_d: file.max_d,
                max_weight: file.max_weight,
            },
        };
        if let Some(p) = cfg.defaults.prime {
            check_prime(p)?;
        }
        Ok(cfg)
    }

    pub fn prime(&self, flag: Option<u64>) -> Result<u64> {
        let p = flag.or(self.defaults.prime).context("missing --prime")?;
        check_prime(p)?;
        Ok(p)
    }

    pub fn max_d(&self, flag: Option<u64>) -> Result<u64> {
        positive("--max-d", flag.or(self.defaults.max_d))
    }

    pub fn max_weight(&self, flag: Option<u64>) -> Result<u64> {
        positive("--max-weight", flag.or(self.defaults.max_weight))
    }
}

fn positive(name: &str, v: Option<u64>) -> Result<u64> {
    match v {
        None => bail!("missing {name}"),
        Some(0) => bail!("{name} must be positive"),
        Some(v) => Ok(v),
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if p == 2 || !is_prime(p) {
        bail!("{p} is not an odd prime");
    }
    Ok(())
}
