//! Run configuration, from flags or from `key=value` files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::Serialize;

use crate::arith::is_prime;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Splitting,
    Relations,
    Form,
    Irreducibility,
    Prop21,
    Extension,
    Image,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Splitting,
        Check::Relations,
        Check::Form,
        Check::Irreducibility,
        Check::Prop21,
        Check::Extension,
        Check::Image,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Splitting => "splitting",
            Check::Relations => "relations",
            Check::Form => "form",
            Check::Irreducibility => "irreducibility",
            Check::Prop21 => "prop21",
            Check::Extension => "extension",
            Check::Image => "image",
        }
    }

    /// Comma separated names; `all` selects every check, empty selects none.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        let s = s.trim();
        if s == "all" {
            return Ok(Check::ALL.to_vec());
        }
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(Check::from_str)
            .collect()
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Json,
    Tsv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "tsv" => Ok(OutputFormat::Tsv),
            _ => Err(Error::Parse(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerificationConfig {
    pub p: u64,
    pub l: u64,
    pub kvec: Vec<u64>,
    pub checks: Vec<Check>,
    pub seed: u64,
    /// The image check is skipped when the expected order exceeds this.
    pub order_cap: BigUint,
    /// Also enumerate the image by closure when its order is at most this.
    pub closure_cap: usize,
    /// Random start states per relation check.
    pub relation_samples: usize,
    pub extension_trials: usize,
    pub extension_dim: usize,
    /// Radical elements tested for membership in degenerate image checks.
    pub radical_cap: usize,
    /// Record wall-clock times; off gives byte-identical reports.
    pub timings: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig {
            p: 5,
            l: 3,
            kvec: vec![1, 1, 1, 1],
            checks: Check::ALL.to_vec(),
            seed: 0,
            order_cap: BigUint::from(10u32).pow(12),
            closure_cap: 0,
            relation_samples: 8,
            extension_trials: 200,
            extension_dim: 4,
            radical_cap: 4096,
            timings: true,
            out: None,
            format: OutputFormat::Json,
        }
    }
}

pub(crate) fn parse_kvec(s: &str) -> Result<Vec<u64>> {
    s.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad monodromy entry {t:?}")))
        })
        .collect()
}

fn parse_num<T: FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::Parse(format!("bad value {v:?} for {key}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(Error::Parse(format!("bad value {v:?} for {key}"))),
    }
}

/// `key=value` lines; blank lines and `#` comments are ignored.
pub(crate) fn parse_kv(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("line {}: expected key=value", no + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

impl VerificationConfig {
    pub fn from_kv_text(text: &str) -> Result<Self> {
        let mut c = VerificationConfig::default();
        for (k, v) in parse_kv(text)? {
            c.set(&k, &v)?;
        }
        Ok(c)
    }

    /// Sets one key, using the same names as the command-line flags.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "p" => self.p = parse_num(key, value)?,
            "l" => self.l = parse_num(key, value)?,
            "k" | "kvec" => self.kvec = parse_kvec(value)?,
            "checks" => self.checks = Check::parse_list(value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "order-cap" | "order_cap" => {
                self.order_cap = BigUint::parse_bytes(value.as_bytes(), 10)
                    .ok_or_else(|| Error::Parse(format!("bad order cap {value:?}")))?
            }
            "closure-cap" | "closure_cap" => self.closure_cap = parse_num(key, value)?,
            "samples" => self.relation_samples = parse_num(key, value)?,
            "trials" => self.extension_trials = parse_num(key, value)?,
            "extension-dim" | "extension_dim" => self.extension_dim = parse_num(key, value)?,
            "radical-cap" | "radical_cap" => self.radical_cap = parse_num(key, value)?,
            "timings" => self.timings = parse_bool(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for x in [self.p, self.l] {
            if x < 3 || !is_prime(x) {
                return Err(Error::NotOddPrime(x));
            }
        }
        if self.p == self.l {
            return Err(Error::EqualPrimes(self.p));
        }
        if self.kvec.len() < 3 {
            return Err(Error::InvalidMonodromyVector(format!(
                "need at least 3 entries, got {}",
                self.kvec.len()
            )));
        }
        if let Some(k) = self.kvec.iter().find(|&&k| k == 0 || k >= self.l) {
            return Err(Error::InvalidMonodromyVector(format!(
                "entry {k} not in 1..{}",
                self.l - 1
            )));
        }
        Ok(())
    }

    /// Requested checks, deduplicated, in dependency order.
    pub fn ordered_checks(&self) -> Vec<Check> {
        let mut c = self.checks.clone();
        c.sort();
        c.dedup();
        c
    }

    pub fn repro_command(&self, check: Check) -> String {
        let k: Vec<String> = self.kvec.iter().map(u64::to_string).collect();
        format!(
            "monodromy verify -p {} -l {} -k {} --checks {} --seed {}",
            self.p,
            self.l,
            k.join(","),
            check,
            self.seed
        )
    }
}

/// Parameter grid for `scan`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanConfig {
    pub p_max: u64,
    pub l_max: u64,
    pub n_max: usize,
    pub order_cap: BigUint,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub timings: bool,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            p_max: 20,
            l_max: 20,
            n_max: 4,
            order_cap: BigUint::from(10u32).pow(7),
            checks: vec![Check::Splitting, Check::Relations, Check::Form, Check::Image],
            seed: 0,
            timings: true,
            out: None,
            format: OutputFormat::Json,
        }
    }
}

impl ScanConfig {
    pub fn from_kv_text(text: &str) -> Result<Self> {
        let mut c = ScanConfig::default();
        for (k, v) in parse_kv(text)? {
            c.set(&k, &v)?;
        }
        Ok(c)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "p-max" | "p_max" => self.p_max = parse_num(key, value)?,
            "l-max" | "l_max" => self.l_max = parse_num(key, value)?,
            "n-max" | "n_max" => self.n_max = parse_num(key, value)?,
            "order-cap" | "order_cap" => {
                self.order_cap = BigUint::parse_bytes(value.as_bytes(), 10)
                    .ok_or_else(|| Error::Parse(format!("bad order cap {value:?}")))?
            }
            "checks" => self.checks = Check::parse_list(value)?,
            "seed" => self.seed = parse_num(key, value)?,
            "timings" => self.timings = parse_bool(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => self.format = value.parse()?,
            _ => return Err(Error::Parse(format!("unknown key {key:?}"))),
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kv_file_roundtrip() {
        let text = "# run\np = 11\nl=5\nk = 1,1,3,2\nchecks=image,form\nseed=9\norder_cap=5000000000\ntimings=false\n";
        let c = VerificationConfig::from_kv_text(text).unwrap();
        assert_eq!((c.p, c.l, c.seed), (11, 5, 9));
        assert_eq!(c.kvec, vec![1, 1, 3, 2]);
        assert_eq!(c.ordered_checks(), vec![Check::Form, Check::Image]);
        assert!(!c.timings);
        c.validate().unwrap();
    }

    #[test]
    fn bad_keys_and_values() {
        assert!(VerificationConfig::from_kv_text("colour=red").is_err());
        assert!(VerificationConfig::from_kv_text("p=five").is_err());
        assert!(VerificationConfig::from_kv_text("just text").is_err());
        assert!(VerificationConfig::from_kv_text("checks=image,bogus").is_err());
    }

    #[test]
    fn validation() {
        let mut c = VerificationConfig::default();
        c.p = 9;
        assert!(c.validate().is_err());
        c.p = 3;
        assert_eq!(c.validate(), Err(Error::EqualPrimes(3)));
        c.p = 5;
        c.kvec = vec![1, 3, 1];
        assert!(c.validate().is_err());
    }

    #[test]
    fn empty_and_all_lists() {
        assert!(Check::parse_list("").unwrap().is_empty());
        assert_eq!(Check::parse_list("all").unwrap().len(), 7);
    }
}
