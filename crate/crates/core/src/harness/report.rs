use std::io::Write;
use std::path::Path;
use std::time::Duration;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::SuiteConfig;
use crate::ineq::{Case, SlackResult, StatementId};
use crate::Result;

pub const REPORT_SCHEMA: &str = "bnineq/report/v1";

/// The least favourable case of a statement, with every result it produced.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorstCase {
    pub index: usize,
    pub min_rel_slack: f64,
    pub case: Case,
    pub results: Vec<SlackResult>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatementSummary {
    pub statement: StatementId,
    /// Cases attempted.
    pub run: usize,
    pub passed: usize,
    /// Cases with at least one result below `-violation_tol`.
    pub violations: usize,
    /// Cases whose generation or evaluation returned an error.
    pub errors: usize,
    /// Individual `(case, z)` results.
    pub evaluations: usize,
    pub extremal_cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_error: Option<String>,
    pub worst: Option<WorstCase>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessEntry {
    pub statement: StatementId,
    pub family: String,
    pub cases: usize,
    /// Largest relative gap between the sides over the extremal cases.
    pub max_rel_gap: f64,
    pub errors: usize,
}

/// One row of the per-case CSV output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseRow {
    pub statement: StatementId,
    pub index: usize,
    pub n: usize,
    pub k: f64,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub alpha_re: f64,
    pub alpha_im: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub extremal: bool,
    pub evaluations: usize,
    pub min_rel_slack: f64,
    pub violation: bool,
    pub error: String,
}

impl CaseRow {
    pub(super) fn new(id: StatementId, index: usize, case: Option<&Case>, extremal: bool) -> Self {
        let (n, k, r, big_r, alpha, beta) = match case {
            Some(c) => (
                c.operator.n(),
                c.params.k(),
                c.params.r(),
                c.params.big_r(),
                c.params.alpha(),
                c.params.beta(),
            ),
            None => (
                0,
                f64::NAN,
                f64::NAN,
                f64::NAN,
                Complex64::default(),
                Complex64::default(),
            ),
        };
        Self {
            statement: id,
            index,
            n,
            k,
            r,
            big_r,
            alpha_re: alpha.re,
            alpha_im: alpha.im,
            beta_re: beta.re,
            beta_im: beta.im,
            extremal,
            evaluations: 0,
            min_rel_slack: f64::NAN,
            violation: false,
            error: String::new(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub schema: String,
    pub seed: u64,
    pub config: SuiteConfig,
    pub statements: Vec<StatementSummary>,
    pub sharpness: Vec<SharpnessEntry>,
    /// Refined-bound cases where the `Min` coefficient is negative at some
    /// evaluation point.
    pub negative_refinement_cases: usize,
    /// Excluded from the JSON so that reports are reproducible byte for byte.
    #[serde(skip)]
    pub wall_clock: Duration,
    #[serde(skip)]
    pub rows: Vec<CaseRow>,
}

impl SuiteReport {
    pub fn total_violations(&self) -> usize {
        self.statements.iter().map(|s| s.violations).sum()
    }

    pub fn total_errors(&self) -> usize {
        self.statements.iter().map(|s| s.errors).sum()
    }

    pub fn summary(&self, id: StatementId) -> Option<&StatementSummary> {
        self.statements.iter().find(|s| s.statement == id)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let mut file = std::fs::File::create(path)?;
        file.write_all(self.to_json()?.as_bytes())?;
        file.write_all(b"\n")?;
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(writer);
        for row in &self.rows {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_csv_file(&self, path: &Path) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }
}
