//! Reports and the three command entry points behind the `quconv` binary.
//!
//! Reports are TOML documents with a fixed field order. Each command
//! function returns the process exit code so that it can be driven from
//! tests as well as from the binary.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::analysis::{classify, Budgets, Classification, CriterionRecord, SubgroupDescriptor};
use crate::encoder::io::EncoderRecord;
use crate::encoder::{deserialize, SymplecticEncoder};

mod search;
mod suites;

pub use search::{run_search, sample_encoder, SearchConfig, SearchMode, SearchSummary, Target, WitnessRecord};
pub use suites::{run_suite, SuiteReport, Violation, SUITES};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub order: usize,
    pub closure_verified: bool,
    pub generators: Vec<usize>,
    pub members: Vec<usize>,
}

impl From<&SubgroupDescriptor> for SubgroupRecord {
    fn from(s: &SubgroupDescriptor) -> Self {
        SubgroupRecord {
            order: s.members.len(),
            closure_verified: s.closure_verified,
            generators: s.generators.clone(),
            members: s.members.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionRow {
    pub f_path: Vec<usize>,
    pub p_cycle: Vec<usize>,
    pub repetitions: usize,
    pub sum: u8,
    pub doubled_sum: u8,
}

impl From<&CriterionRecord> for CriterionRow {
    fn from(r: &CriterionRecord) -> Self {
        CriterionRow {
            f_path: r.f_path.clone(),
            p_cycle: r.p_cycle.clone(),
            repetitions: r.repetitions,
            sum: r.sum,
            doubled_sum: r.doubled_sum,
        }
    }
}

/// Flat, serializable view of a [`Classification`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub catastrophic: bool,
    pub recursive: bool,
    pub recursive_impulse: bool,
    pub criterion_met: bool,
    pub criterion_complete: bool,
    pub criterion_pairs: u64,
    pub max_len: usize,
    pub repetition_budget: usize,
    pub catastrophic_witness: Vec<String>,
    pub recursive_counterexample: Vec<String>,
    pub finite_memory: SubgroupRecord,
    pub zero_cycle: SubgroupRecord,
    pub centralizer_of_finite: SubgroupRecord,
    pub criterion_records: Vec<CriterionRow>,
}

impl ClassificationRecord {
    pub fn new(c: &Classification, max_records: usize) -> Self {
        let render = |edges: &Option<Vec<crate::diagram::Edge>>| {
            edges.iter().flatten().map(|e| e.to_string()).collect::<Vec<_>>()
        };
        ClassificationRecord {
            catastrophic: c.catastrophic,
            recursive: c.recursive,
            recursive_impulse: c.recursive_impulse,
            criterion_met: c.criterion_met,
            criterion_complete: c.criterion_complete,
            criterion_pairs: c.criterion_pairs,
            max_len: c.max_len,
            repetition_budget: c.repetition_budget,
            catastrophic_witness: render(&c.catastrophic_witness),
            recursive_counterexample: render(&c.recursive_counterexample),
            finite_memory: (&c.finite_memory).into(),
            zero_cycle: (&c.zero_cycle).into(),
            centralizer_of_finite: (&c.centralizer_of_finite).into(),
            criterion_records: c.criterion_records.iter().take(max_records).map(Into::into).collect(),
        }
    }

    /// The flags a re-analysis must reproduce.
    pub fn flags(&self) -> (bool, bool, bool, bool) {
        (self.catastrophic, self.recursive, self.recursive_impulse, self.criterion_met)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeReport {
    pub encoder: EncoderRecord,
    pub classification: ClassificationRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub wall_seconds: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budgets: Option<Budgets>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analyze: Option<AnalyzeReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<SuiteReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search_config: Option<SearchConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub search: Option<SearchSummary>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            tool: "quconv".into(),
            version: VERSION.into(),
            command: command.into(),
            wall_seconds: 0.0,
            budgets: None,
            analyze: None,
            verify: None,
            search_config: None,
            search: None,
        }
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }
}

/// Criterion rows kept per classification in reports.
pub const REPORT_RECORDS: usize = 64;

pub fn analyze_encoder(encoder: &SymplecticEncoder, budgets: &Budgets) -> crate::Result<AnalyzeReport> {
    let c = classify(encoder, budgets)?;
    Ok(AnalyzeReport { encoder: encoder.into(), classification: ClassificationRecord::new(&c, REPORT_RECORDS) })
}

fn emit(report: &RunReport, out: Option<&Path>) -> Result<(), std::io::Error> {
    let text = report.to_toml();
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// `analyze`: 0 ok, 2 parse or validation failure, 3 I/O error.
pub fn cmd_analyze(encoder_path: &Path, max_len: Option<usize>, out: Option<&Path>) -> i32 {
    let start = Instant::now();
    let text = match std::fs::read_to_string(encoder_path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", encoder_path.display());
            return 3;
        }
    };
    let encoder = match deserialize(&text) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {}: {e}", encoder_path.display());
            return 2;
        }
    };
    let mut budgets = Budgets::from_env();
    if max_len.is_some() {
        budgets.max_len = max_len;
    }
    let analyzed = match analyze_encoder(&encoder, &budgets) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut report = RunReport::new("analyze");
    report.budgets = Some(budgets);
    report.analyze = Some(analyzed);
    report.wall_seconds = start.elapsed().as_secs_f64();
    match emit(&report, out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: cannot write report: {e}");
            3
        }
    }
}

/// `verify`: 0 all properties hold, 1 some violation, 2 unknown suite.
pub fn cmd_verify(suite: &str, primes: &[u64], trials: usize, seed: u64, out: Option<&Path>) -> i32 {
    let start = Instant::now();
    let result = match run_suite(suite, primes, trials, seed) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let passed = result.passed;
    for v in &result.violations {
        eprintln!("violation: p={} seed={} trial={}: {}", v.p, v.seed, v.trial, v.detail);
    }
    let mut report = RunReport::new("verify");
    report.verify = Some(result);
    report.wall_seconds = start.elapsed().as_secs_f64();
    if let Err(e) = emit(&report, out) {
        eprintln!("error: cannot write report: {e}");
        return 3;
    }
    if passed {
        0
    } else {
        1
    }
}

/// `search`: 0 some witness found, 1 none, 2 configuration error.
pub fn cmd_search(config: &SearchConfig, out: Option<&Path>) -> i32 {
    let start = Instant::now();
    let summary = match run_search(config, |w| eprintln!("match: index {} ({})", w.index, w.encoder.label.as_deref().unwrap_or("-"))) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let found = summary.matches > 0;
    let mut report = RunReport::new("search");
    report.search_config = Some(config.clone());
    report.search = Some(summary);
    report.wall_seconds = start.elapsed().as_secs_f64();
    if let Err(e) = emit(&report, out) {
        eprintln!("error: cannot write report: {e}");
        return 3;
    }
    if found {
        0
    } else {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{random_encoder, serialize, CodeParams};

    #[test]
    fn report_round_trips_through_toml() {
        let e = random_encoder(CodeParams::new(3, 1, 2, 1).unwrap(), 4, 40);
        let mut report = RunReport::new("analyze");
        report.budgets = Some(Budgets::default());
        report.analyze = Some(analyze_encoder(&e, &Budgets::default()).unwrap());
        let text = report.to_toml();
        let back = RunReport::from_toml(&text).unwrap();
        assert_eq!(back, report);
        let record = back.analyze.unwrap().encoder;
        let again = record.into_encoder("").unwrap();
        assert_eq!(serialize(&again), serialize(&e));
    }

    #[test]
    fn analyze_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(cmd_analyze(&dir.path().join("missing.toml"), None, None), 3);
        let bad = dir.path().join("bad.toml");
        std::fs::write(&bad, "p = 2\nm = 1\nn = 1\nk = 1\nmatrix = [[1,1,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]]\n").unwrap();
        assert_eq!(cmd_analyze(&bad, None, None), 2);
        let good = dir.path().join("good.toml");
        std::fs::write(&good, serialize(&random_encoder(CodeParams::new(3, 1, 2, 1).unwrap(), 2, 40))).unwrap();
        let out = dir.path().join("report.toml");
        assert_eq!(cmd_analyze(&good, Some(4), Some(&out)), 0);
        let report = RunReport::from_toml(&std::fs::read_to_string(&out).unwrap()).unwrap();
        assert_eq!(report.analyze.unwrap().classification.max_len, 4);
    }

    #[test]
    fn unknown_suite_exits_2() {
        assert_eq!(cmd_verify("nonsense", &[2], 1, 0, None), 2);
    }
}
