//! Verification runs: configuration, per-check records and reports.
//!
//! A report is a list of records `{name, parameters, expected, computed,
//! match, runtime_ms, findings}`. `expected` carries its provenance. A record
//! is either a match, a mismatch (a mathematical finding), skipped (hypotheses
//! unmet or resources exceeded) or an operational error; the last three are
//! told apart by the `computed` value (`"skipped: ..."`, `"error: ..."`).

mod checks;
mod config;
mod scan;

pub use config::{Check, OutputFormat, ScanConfig, VerificationConfig};
pub use scan::scan;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Expected {
    pub value: Value,
    pub provenance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub parameters: Value,
    pub expected: Expected,
    pub computed: Value,
    #[serde(rename = "match")]
    pub matched: bool,
    pub runtime_ms: u64,
    pub findings: Vec<String>,
}

impl Record {
    pub fn status(&self) -> Status {
        if self.matched {
            return Status::Match;
        }
        match self.computed.as_str() {
            Some(s) if s.starts_with("skipped:") => Status::Skipped,
            Some(s) if s.starts_with("error:") => Status::Error,
            _ => Status::Mismatch,
        }
    }

    fn skipped(name: &str, parameters: Value, expected: Expected, reason: &str) -> Self {
        Record {
            name: name.into(),
            parameters,
            expected,
            computed: Value::String(format!("skipped: {reason}")),
            matched: false,
            runtime_ms: 0,
            findings: Vec::new(),
        }
    }

    fn error(name: &str, parameters: Value, err: &Error) -> Self {
        let skipped_kind = matches!(err, Error::FieldTooLarge { .. });
        let computed = if skipped_kind {
            format!("skipped: overflow ({err})")
        } else {
            format!("error: {err}")
        };
        Record {
            name: name.into(),
            parameters,
            expected: Expected {
                value: Value::Null,
                provenance: "none".into(),
            },
            computed: Value::String(computed),
            matched: false,
            runtime_ms: 0,
            findings: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    /// 0 when nothing mismatched or failed, 1 on a mismatch, 2 on an
    /// operational error (takes precedence).
    pub fn exit_code(&self) -> i32 {
        let statuses: Vec<Status> = self.records.iter().map(Record::status).collect();
        if statuses.contains(&Status::Error) {
            2
        } else if statuses.contains(&Status::Mismatch) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per record, tab separated, with a header line.
    pub fn to_tsv(&self) -> String {
        let mut out =
            String::from("name\tparameters\texpected\tprovenance\tcomputed\tmatch\truntime_ms\tfindings\n");
        for r in &self.records {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                tsv_cell(&r.name),
                tsv_cell(&r.parameters.to_string()),
                tsv_cell(&r.expected.value.to_string()),
                tsv_cell(&r.expected.provenance),
                tsv_cell(&r.computed.to_string()),
                r.matched,
                r.runtime_ms,
                tsv_cell(&r.findings.join(" | ")),
            );
        }
        out
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => self.to_json() + "\n",
            OutputFormat::Tsv => self.to_tsv(),
        }
    }
}

fn tsv_cell(s: &str) -> String {
    s.replace(['\t', '\n', '\r'], " ")
}

/// Runs the configured checks in dependency order. Per-check failures
/// become records; only an invalid configuration is an `Err`.
pub fn run_verification(config: &VerificationConfig) -> Result<Report> {
    config.validate()?;
    let mut records = Vec::new();
    if config.checks.is_empty() {
        return Ok(Report { records });
    }
    let mut state = checks::State::new(config);
    for &check in &config.ordered_checks() {
        let start = Instant::now();
        let mut record = state.run(check);
        record.runtime_ms = if config.timings {
            start.elapsed().as_millis() as u64
        } else {
            0
        };
        if record.status() == Status::Mismatch {
            record
                .findings
                .push(format!("reproduce: {}", config.repro_command(check)));
        }
        records.push(record);
    }
    Ok(Report { records })
}

fn parameters(config: &VerificationConfig) -> Value {
    json!({
        "p": config.p,
        "l": config.l,
        "k": config.kvec,
        "seed": config.seed.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(p: u64, l: u64, k: &[u64], checks: &[Check]) -> VerificationConfig {
        VerificationConfig {
            p,
            l,
            kvec: k.to_vec(),
            checks: checks.to_vec(),
            timings: false,
            ..VerificationConfig::default()
        }
    }

    #[test]
    fn empty_checks_give_empty_report() {
        let r = run_verification(&cfg(5, 3, &[1, 1, 1, 1], &[])).unwrap();
        assert!(r.records.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn image_small_unitary() {
        let r = run_verification(&cfg(5, 3, &[1, 1, 1, 1], &[Check::Image])).unwrap();
        assert_eq!(r.records.len(), 1);
        assert!(r.records[0].matched, "{:?}", r.records[0]);
        assert_eq!(r.records[0].computed["order"], json!("1134000"));
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn degenerate_form_reported() {
        let r = run_verification(&cfg(5, 3, &[1, 1, 1], &[Check::Form])).unwrap();
        let rec = &r.records[0];
        assert!(rec.matched, "{rec:?}");
        assert_eq!(rec.computed["degenerate"], json!(true));
        assert_eq!(rec.computed["kernel_dim"], json!(1));
    }

    #[test]
    fn all_cheap_checks_match() {
        let checks = [
            Check::Splitting,
            Check::Relations,
            Check::Form,
            Check::Irreducibility,
            Check::Extension,
        ];
        for (p, l, k) in [(5u64, 3u64, vec![1u64, 1, 1, 1]), (11, 5, vec![1, 2, 3, 1])] {
            let r = run_verification(&cfg(p, l, &k, &checks)).unwrap();
            assert_eq!(r.records.len(), checks.len());
            for rec in &r.records {
                assert_ne!(rec.status(), Status::Mismatch, "{rec:?}");
                assert_ne!(rec.status(), Status::Error, "{rec:?}");
            }
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let c = cfg(5, 3, &[1, 1, 2, 2], &[Check::Form, Check::Prop21, Check::Relations]);
        let a = run_verification(&c).unwrap().to_json();
        let b = run_verification(&c).unwrap().to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn tsv_has_one_line_per_record() {
        let c = cfg(5, 3, &[1, 1, 1, 1], &[Check::Splitting, Check::Form]);
        let t = run_verification(&c).unwrap().to_tsv();
        assert_eq!(t.lines().count(), 3);
    }

    #[test]
    fn operational_error_exit_code() {
        let c = cfg(5, 3, &[1, 1, 1, 1], &[Check::Splitting]);
        let mut r = run_verification(&c).unwrap();
        r.records[0].computed = json!("error: boom");
        r.records[0].matched = false;
        assert_eq!(r.exit_code(), 2);
    }
}
