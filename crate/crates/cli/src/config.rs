use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use boettcher_core::verify::{CheckKind, CHECK_NAMES};
use boettcher_core::Prime;
use serde::Deserialize;

use crate::error::CliError;

/// Largest `r` accepted.
pub const MAX_R: u32 = 4;

/// Largest `K` accepted for primes other than 3, 5 and 7.
pub const FALLBACK_CAP: usize = 40;

/// Desk-scale truncation cap for `p`.
pub fn desk_cap(p: u64) -> usize {
    match p {
        3 => 250,
        5 => 130,
        7 => 60,
        _ => FALLBACK_CAP,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckSelection {
    All,
    Named(Vec<String>),
}

impl CheckSelection {
    /// Check names to run on a table with parameters `(p, r, K)`. A named
    /// check that does not apply to `r` is a usage error.
    pub fn resolve(&self, p: u64, r: u32, max_k: usize) -> Result<Vec<&'static str>, CliError> {
        match self {
            CheckSelection::All => Ok(boettcher_core::verify::default_checks(p, r, max_k)),
            CheckSelection::Named(names) => names
                .iter()
                .map(|name| {
                    let canonical = CHECK_NAMES
                        .iter()
                        .copied()
                        .find(|c| c == name)
                        .ok_or_else(|| CliError::Usage(format!("unknown check `{name}`")))?;
                    let kind = CheckKind::of(canonical).expect("every listed check has a kind");
                    if !kind.accepts(r) {
                        return Err(CliError::Usage(format!("check `{name}` does not apply to r = {r}")));
                    }
                    Ok(canonical)
                })
                .collect(),
        }
    }
}

/// A fully validated run description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    pub r_values: Vec<u32>,
    pub max_k: BTreeMap<u64, usize>,
    pub checks: CheckSelection,
    pub out: PathBuf,
    pub jobs: Option<usize>,
}

impl RunConfig {
    /// `(p, r, K)` for every cell of the grid, primes outermost.
    pub fn cells(&self) -> Vec<(u64, u32, usize)> {
        self.primes
            .iter()
            .flat_map(|&p| self.r_values.iter().map(move |&r| (p, r, self.max_k[&p])))
            .collect()
    }
}

/// Settings as they arrive from flags or a TOML file; every field optional.
#[derive(Debug, Clone, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    pub p: Option<Vec<u64>>,
    pub r: Option<Vec<u32>>,
    /// Entries are `K` (all primes) or `p:K`.
    pub max_k: Option<Vec<String>>,
    pub checks: Option<Vec<String>>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl PartialConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ConfigRead {
            path: path.to_path_buf(),
            source,
        })?;
        toml::from_str(&text).map_err(|source| CliError::ConfigParse {
            path: path.to_path_buf(),
            source,
        })
    }

    /// Field-wise merge in which `self` (the flags) wins.
    pub fn over(self, file: PartialConfig) -> PartialConfig {
        PartialConfig {
            p: self.p.or(file.p),
            r: self.r.or(file.r),
            max_k: self.max_k.or(file.max_k),
            checks: self.checks.or(file.checks),
            out: self.out.or(file.out),
            jobs: self.jobs.or(file.jobs),
        }
    }

    pub fn validate(self, default_r: &[u32]) -> Result<RunConfig, CliError> {
        let primes = self
            .p
            .filter(|p| !p.is_empty())
            .ok_or_else(|| CliError::Usage("at least one prime is required (--p)".into()))?;
        for &p in &primes {
            Prime::new(p)?;
        }
        let r_values = self.r.filter(|r| !r.is_empty()).unwrap_or_else(|| default_r.to_vec());
        if let Some(&r) = r_values.iter().find(|&&r| r > MAX_R) {
            return Err(CliError::Usage(format!(
                "r = {r} exceeds the supported range 0..={MAX_R}"
            )));
        }

        let mut max_k: BTreeMap<u64, usize> = primes.iter().map(|&p| (p, desk_cap(p))).collect();
        for entry in self.max_k.unwrap_or_default() {
            let (target, value) = match entry.split_once(':') {
                Some((p, k)) => (Some(parse_number::<u64>(p, &entry)?), parse_number::<usize>(k, &entry)?),
                None => (None, parse_number::<usize>(&entry, &entry)?),
            };
            match target {
                Some(p) if !max_k.contains_key(&p) => {
                    return Err(CliError::Usage(format!(
                        "--max-k names p = {p}, which is not in the prime list"
                    )))
                }
                Some(p) => {
                    max_k.insert(p, value);
                }
                None => max_k.values_mut().for_each(|k| *k = value),
            }
        }
        for (&p, &k) in &max_k {
            if k == 0 {
                return Err(CliError::Usage("K must be at least 1".into()));
            }
            if k > desk_cap(p) {
                return Err(CliError::Usage(format!(
                    "K = {k} exceeds the desk-scale cap {} for p = {p}",
                    desk_cap(p)
                )));
            }
        }

        let checks = match self.checks {
            None => CheckSelection::All,
            Some(list) if list.iter().any(|c| c == "all") => CheckSelection::All,
            Some(list) => {
                if let Some(bad) = list.iter().find(|c| !CHECK_NAMES.contains(&c.as_str())) {
                    return Err(CliError::Usage(format!(
                        "unknown check `{bad}`; known checks: all, {}",
                        CHECK_NAMES.join(", ")
                    )));
                }
                CheckSelection::Named(list)
            }
        };
        if self.jobs == Some(0) {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        Ok(RunConfig {
            primes,
            r_values,
            max_k,
            checks,
            out: self.out.unwrap_or_else(|| PathBuf::from("boettcher-out")),
            jobs: self.jobs,
        })
    }
}

fn parse_number<T: std::str::FromStr>(text: &str, entry: &str) -> Result<T, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("cannot parse `{entry}` as K or p:K")))
}
