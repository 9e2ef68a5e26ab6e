//! Seeded random verification of the inequalities.
//!
//! Every case draws from its own ChaCha8 stream, keyed by the suite seed,
//! the statement and the case index, so cases can be evaluated in parallel
//! and a report depends only on its configuration.

pub mod gen;
mod report;

use std::path::PathBuf;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use report::{
    CaseRow, SharpnessEntry, StatementSummary, SuiteReport, WorstCase, REPORT_SCHEMA,
};

use crate::circle;
use crate::ineq::{Case, Evaluator, SlackResult, StatementId, DEFAULT_VIOLATION_TOL};
use crate::{Error, Result};

/// How `α` and `β` are drawn.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParamMode {
    /// Area-uniform in the closed unit disk.
    Interior,
    /// Uniform on the unit circle.
    Boundary,
    /// Unit circle with probability 1/4, disk otherwise.
    #[default]
    Mixed,
}

impl std::str::FromStr for ParamMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "interior" => Ok(Self::Interior),
            "boundary" => Ok(Self::Boundary),
            "mixed" => Ok(Self::Mixed),
            other => Err(Error::InvalidParams(format!(
                "unknown parameter mode `{other}`"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Parameters held fixed across a run instead of being sampled.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FixedParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, rename = "R", skip_serializing_if = "Option::is_none")]
    pub big_r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Complex64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Complex64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub statements: Vec<StatementId>,
    pub n_min: usize,
    pub n_max: usize,
    /// Cases per statement.
    pub cases: usize,
    pub seed: u64,
    pub violation_tol: f64,
    pub extremum_tol: f64,
    pub mode: ParamMode,
    pub fixed: FixedParams,
    /// Probability that a case is drawn from the statement's equality family.
    pub extremal_fraction: f64,
    /// Extremal cases per statement for the sharpness section of the report.
    pub sharpness_cases: usize,
    /// Multiplier applied to every right-hand side. Anything other than 1
    /// deliberately breaks the inequalities.
    pub rhs_scale: f64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub format: OutputFormat,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            statements: StatementId::MAIN.to_vec(),
            n_min: 1,
            n_max: 8,
            cases: 100,
            seed: 0,
            violation_tol: DEFAULT_VIOLATION_TOL,
            extremum_tol: circle::DEFAULT_TOL,
            mode: ParamMode::Mixed,
            fixed: FixedParams::default(),
            extremal_fraction: 0.2,
            sharpness_cases: 10,
            rhs_scale: 1.0,
            output: None,
            format: OutputFormat::Json,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.statements.is_empty() {
            return bad("no statements selected".into());
        }
        if self.n_min == 0 || self.n_min > self.n_max {
            return bad(format!(
                "invalid degree range {}..{}",
                self.n_min, self.n_max
            ));
        }
        if !(self.violation_tol >= 0.0 && self.violation_tol.is_finite()) {
            return Err(Error::InvalidTolerance(self.violation_tol));
        }
        if !(self.extremum_tol > 0.0 && self.extremum_tol.is_finite()) {
            return Err(Error::InvalidTolerance(self.extremum_tol));
        }
        if !(0.0..=1.0).contains(&self.extremal_fraction) {
            return bad(format!(
                "extremal fraction {} outside [0, 1]",
                self.extremal_fraction
            ));
        }
        if !(self.rhs_scale > 0.0 && self.rhs_scale.is_finite()) {
            return bad(format!(
                "rhs scale must be positive, got {}",
                self.rhs_scale
            ));
        }
        let f = &self.fixed;
        for (name, value) in [("k", f.k), ("r", f.r), ("R", f.big_r)] {
            if let Some(v) = value {
                if !(v > 0.0 && v.is_finite()) {
                    return bad(format!("{name} must be positive, got {v}"));
                }
            }
        }
        if let (Some(k), Some(r)) = (f.k, f.r) {
            if r < k {
                return bad(format!("need r >= k, got r = {r}, k = {k}"));
            }
        }
        let lower = f.r.or(f.k);
        if let (Some(lo), Some(big_r)) = (lower, f.big_r) {
            if big_r <= lo {
                return bad(format!("need R > r >= k, got R = {big_r}"));
            }
        }
        for (name, value) in [("alpha", f.alpha), ("beta", f.beta)] {
            if let Some(v) = value {
                if v.norm() > 1.0 + crate::ineq::UNIT_SLOP {
                    return bad(format!("|{name}| = {} exceeds 1", v.norm()));
                }
            }
        }
        for id in &self.statements {
            if let Some(k) = f.k {
                if id.requires_k_at_most_one() && k > 1.0 {
                    return bad(format!("{id} requires k <= 1, got k = {k}"));
                }
            }
            if id.pins_alpha() && f.alpha.is_some_and(|a| a.norm() != 0.0) {
                return bad(format!("{id} fixes alpha = 0"));
            }
            if id.pins_beta() && f.beta.is_some_and(|b| b.norm() != 0.0) {
                return bad(format!("{id} fixes beta = 0"));
            }
        }
        Ok(())
    }

    fn evaluator(&self) -> Evaluator {
        Evaluator {
            extremum_tol: self.extremum_tol,
        }
    }
}

fn stream_index(id: StatementId) -> u64 {
    StatementId::all().position(|s| s == id).unwrap_or(0) as u64
}

/// The random stream of case `index` of statement `id`.
pub fn case_rng(seed: u64, id: StatementId, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream_index(id) << 40) | index as u64);
    rng
}

fn sharpness_rng(seed: u64, id: StatementId, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((1 << 63) | (stream_index(id) << 40) | index as u64);
    rng
}

/// Results of a case, with `rhs` scaled by `rhs_scale`, and whether the
/// refined bound's `Min` coefficient is negative anywhere.
fn evaluate_scaled(
    ev: &Evaluator,
    case: &Case,
    rhs_scale: f64,
) -> Result<(Vec<SlackResult>, bool)> {
    let (results, negative) = match case.statement {
        StatementId::T3 | StatementId::C5 | StatementId::C6 => {
            ev.evaluate(case)?;
            let pairs =
                ev.refined_with_coefficient(case.statement, &case.operator, &case.p, &case.params)?;
            let negative = pairs.iter().any(|(_, c)| *c < 0.0);
            (pairs.into_iter().map(|(r, _)| r).collect(), negative)
        }
        _ => (ev.evaluate(case)?, false),
    };
    let results = if rhs_scale == 1.0 {
        results
    } else {
        results
            .iter()
            .map(|r| r.with_scaled_rhs(rhs_scale))
            .collect()
    };
    Ok((results, negative))
}

struct Outcome {
    case: Option<Case>,
    extremal: bool,
    results: Vec<SlackResult>,
    negative_refinement: bool,
    error: Option<String>,
}

impl Outcome {
    fn min_rel_slack(&self) -> f64 {
        self.results
            .iter()
            .map(|r| r.rel_slack)
            .fold(f64::INFINITY, f64::min)
    }
}

fn run_case(config: &SuiteConfig, ev: &Evaluator, id: StatementId, index: usize) -> Outcome {
    let mut rng = case_rng(config.seed, id, index);
    let extremal = rng.gen_bool(config.extremal_fraction) && id.extremal_family().is_some();
    let case = match gen::case(&mut rng, id, config, extremal) {
        Ok(case) => case,
        Err(e) => {
            return Outcome {
                case: None,
                extremal,
                results: Vec::new(),
                negative_refinement: false,
                error: Some(e.to_string()),
            }
        }
    };
    let mut evaluated = evaluate_scaled(ev, &case, config.rhs_scale);
    let violated = |res: &Result<(Vec<SlackResult>, bool)>| matches!(res, Ok((rs, _)) if rs.iter().any(|r| r.is_violation(config.violation_tol)));
    if violated(&evaluated) {
        // confirm with tighter extrema before reporting
        let tight = Evaluator {
            extremum_tol: ev.extremum_tol * 1e-2,
        };
        evaluated = evaluate_scaled(&tight, &case, config.rhs_scale);
    }
    match evaluated {
        Ok((results, negative_refinement)) => Outcome {
            case: Some(case),
            extremal,
            results,
            negative_refinement,
            error: None,
        },
        Err(e) => Outcome {
            case: Some(case),
            extremal,
            results: Vec::new(),
            negative_refinement: false,
            error: Some(e.to_string()),
        },
    }
}

fn summarize(
    id: StatementId,
    outcomes: Vec<Outcome>,
    tol: f64,
    rows: &mut Vec<CaseRow>,
) -> (StatementSummary, usize) {
    let mut summary = StatementSummary {
        statement: id,
        run: outcomes.len(),
        passed: 0,
        violations: 0,
        errors: 0,
        evaluations: 0,
        extremal_cases: 0,
        first_error: None,
        worst: None,
    };
    let mut negative = 0;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        let mut row = CaseRow::new(id, index, outcome.case.as_ref(), outcome.extremal);
        summary.extremal_cases += usize::from(outcome.extremal);
        negative += usize::from(outcome.negative_refinement);
        if let Some(err) = &outcome.error {
            summary.errors += 1;
            summary
                .first_error
                .get_or_insert_with(|| format!("case {index}: {err}"));
            row.error = err.clone();
            rows.push(row);
            continue;
        }
        let min_rel = outcome.min_rel_slack();
        let violation = outcome.results.iter().any(|r| r.is_violation(tol));
        summary.evaluations += outcome.results.len();
        if violation {
            summary.violations += 1;
        } else {
            summary.passed += 1;
        }
        row.evaluations = outcome.results.len();
        row.min_rel_slack = min_rel;
        row.violation = violation;
        rows.push(row);
        let better = summary
            .worst
            .as_ref()
            .is_none_or(|w| min_rel < w.min_rel_slack);
        if better {
            if let Some(case) = outcome.case {
                summary.worst = Some(WorstCase {
                    index,
                    min_rel_slack: min_rel,
                    case,
                    results: outcome.results,
                });
            }
        }
    }
    (summary, negative)
}

/// Runs every configured statement, writes the report to `config.output`
/// when set, and returns it.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    config.validate()?;
    let start = Instant::now();
    let ev = config.evaluator();
    let mut statements = Vec::with_capacity(config.statements.len());
    let mut sharpness = Vec::new();
    let mut rows = Vec::new();
    let mut negative_refinement_cases = 0;
    for &id in &config.statements {
        let outcomes: Vec<Outcome> = (0..config.cases)
            .into_par_iter()
            .map(|i| run_case(config, &ev, id, i))
            .collect();
        let (summary, negative) = summarize(id, outcomes, config.violation_tol, &mut rows);
        negative_refinement_cases += negative;
        statements.push(summary);
        if config.sharpness_cases > 0 && id.extremal_family().is_some() {
            sharpness.push(sharpness_scan(
                id,
                config.sharpness_cases,
                config.seed,
                config,
            )?);
        }
    }
    let report = SuiteReport {
        schema: REPORT_SCHEMA.to_string(),
        seed: config.seed,
        config: config.clone(),
        statements,
        sharpness,
        negative_refinement_cases,
        wall_clock: start.elapsed(),
        rows,
    };
    if let Some(path) = &config.output {
        match config.format {
            OutputFormat::Json => report.write_json(path)?,
            OutputFormat::Csv => report.write_csv_file(path)?,
        }
    }
    Ok(report)
}

/// Draws `cases` members of the statement's equality family and records the
/// largest relative gap between the two sides.
pub fn sharpness_scan(
    id: StatementId,
    cases: usize,
    seed: u64,
    config: &SuiteConfig,
) -> Result<SharpnessEntry> {
    let family = id
        .extremal_family()
        .ok_or_else(|| Error::NoExtremalFamily(id.to_string()))?;
    let ev = config.evaluator();
    let gaps: Vec<Result<f64>> = (0..cases)
        .into_par_iter()
        .map(|i| {
            let mut rng = sharpness_rng(seed, id, i);
            let case = gen::case(&mut rng, id, config, true)?;
            ev.sharpness_gap(&case)
        })
        .collect();
    let errors = gaps.iter().filter(|g| g.is_err()).count();
    let max_rel_gap = gaps
        .iter()
        .filter_map(|g| g.as_ref().ok())
        .fold(0.0, |acc: f64, &g| acc.max(g));
    Ok(SharpnessEntry {
        statement: id,
        family: family.to_string(),
        cases,
        max_rel_gap,
        errors,
    })
}
