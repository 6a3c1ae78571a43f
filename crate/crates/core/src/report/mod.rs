//! Config ingestion, analysis orchestration, the golden corpus, the property
//! suites, and report emission as JSON or aligned text.

pub mod analysis;
pub mod config;
pub mod corpus;
pub mod properties;
mod text;
pub mod types;

use serde::{Deserialize, Serialize};

pub use analysis::{run_analysis, AnalysisReport, AnalysisResults};
pub use config::{Analysis, AnalysisConfig, ConfigEcho, Mode};
pub use corpus::{run_corpus, CorpusReport};
pub use properties::{run_properties, run_suite, PropertiesReport, Suite, SuiteReport};
pub use types::{Checked, Outcome, Relation, Timing};

use crate::error::{Error, Result};

/// Exit status: everything passed.
pub const EXIT_OK: i32 = 0;
/// Exit status: some analysis, case or property failed.
pub const EXIT_FAILURE: i32 = 2;
/// Exit status: the config could not be read or validated.
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub properties: Option<PropertiesReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
    pub passed: bool,
}

impl Report {
    pub fn from_parts(
        analysis: Option<AnalysisReport>,
        corpus: Option<CorpusReport>,
        properties: Option<PropertiesReport>,
    ) -> Self {
        let passed = analysis.as_ref().is_none_or(|a| a.passes())
            && corpus.as_ref().is_none_or(|c| c.passed)
            && properties.as_ref().is_none_or(|p| p.passed);
        Report { analysis, corpus, properties, timing: None, passed }
    }

    pub fn analysis(cfg: &AnalysisConfig) -> Self {
        Self::from_parts(Some(run_analysis(cfg)), None, None)
    }

    pub fn corpus() -> Self {
        Self::from_parts(None, Some(run_corpus()), None)
    }

    pub fn properties(seed: u64, trials: usize) -> Self {
        Self::from_parts(None, None, Some(run_properties(seed, trials)))
    }

    pub fn with_timing(mut self, seconds: f64) -> Self {
        self.timing = Some(Timing { seconds });
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_OK
        } else {
            EXIT_FAILURE
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Config(format!("report JSON: {e}")))
    }

    pub fn to_text(&self) -> String {
        text::render(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let cfg = AnalysisConfig::new("dsum(pad(1), bar)", "M2 (+) M1", Mode::Unitary).unwrap().with_trials(3);
        let r = Report::from_parts(Some(run_analysis(&cfg)), Some(run_corpus()), Some(run_properties(3, 1)));
        let back = Report::from_json(&r.to_json()).unwrap();
        assert_eq!(back, r);
        let r = r.with_timing(0.125);
        assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn text_mentions_every_analysis() {
        let cfg = AnalysisConfig::new("pad(1)", "M2", Mode::Unitary).unwrap().with_trials(2);
        let t = Report::analysis(&cfg).to_text();
        for a in &cfg.analyses {
            assert!(t.contains(a.name()), "{a}");
        }
        assert!(t.contains("0.666667"));
    }
}
