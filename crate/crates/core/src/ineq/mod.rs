//! Evaluators for each inequality: every evaluator returns the two sides
//! and their signed gap `rhs - lhs` at one or more evaluation points.
//!
//! Notation shared by the evaluators: `σ(z) = Rz`, `ρ(z) = rz`,
//! `τ(z) = Rz/k²`, `η(z) = rz/k²`, and
//! `Φ = β{((R+k)/(k+r))^n − |α|} − α`. Terms written `|B[z^n]|` are taken
//! at the evaluation point, i.e. `|m_n| |z|^n`.

mod classic;
mod params;
mod statements;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use params::{phi_k, CaseParams, ParamsEcho, RADIUS_GAP, UNIT_SLOP};
pub use statements::Evaluator;

use crate::bnop::BnOperator;
use crate::poly::ComplexPoly;
use crate::Error;

/// Floor for the denominator of the relative slack.
pub const REL_SLACK_FLOOR: f64 = 1e-300;

/// Default threshold below which a relative slack counts as a violation.
pub const DEFAULT_VIOLATION_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatementId {
    L1,
    L3,
    L4,
    T1,
    C1,
    C2,
    C3,
    C4,
    T2,
    T3,
    C5,
    C6,
    Eq1,
    Eq2,
    Eq3,
    Eq4,
    Eq5,
    Eq6,
    E7,
    E8,
    Qe1,
    Qe2,
}

/// Which zero-location hypothesis a statement carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroHypothesis {
    /// No restriction.
    None,
    /// All zeros in `|z| <= k` (applies to `F` for the comparison statements).
    InClosedDisk,
    /// No zeros in `|z| < k`.
    NoneInOpenDisk,
}

impl StatementId {
    pub const MAIN: [StatementId; 12] = [
        Self::L1,
        Self::L3,
        Self::L4,
        Self::T1,
        Self::C1,
        Self::C2,
        Self::C3,
        Self::C4,
        Self::T2,
        Self::T3,
        Self::C5,
        Self::C6,
    ];

    pub const CLASSIC: [StatementId; 10] = [
        Self::Eq1,
        Self::Eq2,
        Self::Eq3,
        Self::Eq4,
        Self::Eq5,
        Self::Eq6,
        Self::E7,
        Self::E8,
        Self::Qe1,
        Self::Qe2,
    ];

    pub fn all() -> impl Iterator<Item = StatementId> {
        Self::MAIN.into_iter().chain(Self::CLASSIC)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Self::L1 => "l1",
            Self::L3 => "l3",
            Self::L4 => "l4",
            Self::T1 => "t1",
            Self::C1 => "c1",
            Self::C2 => "c2",
            Self::C3 => "c3",
            Self::C4 => "c4",
            Self::T2 => "t2",
            Self::T3 => "t3",
            Self::C5 => "c5",
            Self::C6 => "c6",
            Self::Eq1 => "eq1",
            Self::Eq2 => "eq2",
            Self::Eq3 => "eq3",
            Self::Eq4 => "eq4",
            Self::Eq5 => "eq5",
            Self::Eq6 => "eq6",
            Self::E7 => "e7",
            Self::E8 => "e8",
            Self::Qe1 => "qe1",
            Self::Qe2 => "qe2",
        }
    }

    pub fn is_classic(&self) -> bool {
        Self::CLASSIC.contains(self)
    }

    pub fn description(&self) -> &'static str {
        match self {
            Self::L1 => "growth: |P(Rz)| >= ((R+k)/(r+k))^n |P(rz)| on |z|=1",
            Self::L3 => "|B[P∘σ]+Φ B[P∘ρ]| <= k^n |B[Q∘τ]+Φ B[Q∘η]|",
            Self::L4 => "combined P and Q bound by Max_{|z|=k}|P|",
            Self::T1 => "comparison |B[P∘σ]+Φ B[P∘ρ]| <= |B[F∘σ]+Φ B[F∘ρ]|",
            Self::C1 => "comparison with alpha = 0",
            Self::C2 => "max-modulus bound (1/k^n)|R^n+r^nΦ||B[z^n]| Max|P|",
            Self::C3 => "min-modulus lower bound for Min_{|z|=1}|B[F∘σ]+Φ B[F∘ρ]|",
            Self::C4 => "max-modulus bound with beta = 0",
            Self::T2 => "half-sum bound for P without zeros in |z|<k",
            Self::T3 => "refined half-sum bound using Min_{|z|=k}|P|",
            Self::C5 => "refined bound with alpha = 0",
            Self::C6 => "refined bound with beta = 0",
            Self::Eq1 => "Max|P'| <= n Max|P|",
            Self::Eq2 => "Max_{|z|=R}|P| <= R^n Max|P|",
            Self::Eq3 => "Max|P'| <= (n/2) Max|P|, no zeros in |z|<1",
            Self::Eq4 => "Max_{|z|=R}|P| <= (R^n+1)/2 Max|P|, no zeros in |z|<1",
            Self::Eq5 => "Max|P'| <= (n/2)(Max|P| - Min|P|), no zeros in |z|<1",
            Self::Eq6 => "Max_{|z|=R}|P| <= (R^n+1)/2 Max - (R^n-1)/2 Min, no zeros in |z|<1",
            Self::E7 => "|P(Rz)-αP(z)+βwP(z)| <= |z|^n|R^n-α+βw| Max|P|",
            Self::E8 => "half-sum form of e7, no zeros in |z|<1",
            Self::Qe1 => "|B[P](z)| <= |B[z^n]| Max|P|",
            Self::Qe2 => "|B[P](z)| <= (|B[z^n]|+|λ0|)/2 Max|P|, no zeros in |z|<1",
        }
    }

    pub fn zero_hypothesis(&self) -> ZeroHypothesis {
        match self {
            Self::L1 | Self::T1 | Self::C1 | Self::C3 => ZeroHypothesis::InClosedDisk,
            Self::L3
            | Self::T2
            | Self::T3
            | Self::C5
            | Self::C6
            | Self::Eq3
            | Self::Eq4
            | Self::Eq5
            | Self::Eq6
            | Self::E8
            | Self::Qe2 => ZeroHypothesis::NoneInOpenDisk,
            Self::L4 | Self::C2 | Self::C4 | Self::Eq1 | Self::Eq2 | Self::E7 | Self::Qe1 => {
                ZeroHypothesis::None
            }
        }
    }

    /// Statements stated only for `k <= 1`.
    pub fn requires_k_at_most_one(&self) -> bool {
        matches!(self, Self::L4 | Self::T2 | Self::T3 | Self::C5 | Self::C6)
    }

    /// Statements whose `alpha` is pinned to zero.
    pub fn pins_alpha(&self) -> bool {
        matches!(self, Self::C1 | Self::C5)
    }

    /// Statements whose `beta` is pinned to zero.
    pub fn pins_beta(&self) -> bool {
        matches!(self, Self::C4 | Self::C6)
    }

    /// The family of polynomials attaining equality, when one is known.
    pub fn extremal_family(&self) -> Option<&'static str> {
        match self {
            Self::T1 | Self::C1 => Some("P = e^{iγ} F"),
            Self::C2 | Self::C4 => Some("P = a z^n"),
            Self::C3 => Some("F = a z^n"),
            Self::L1 => Some("P = a (z - k e^{iψ})^n, z = -e^{iψ}"),
            Self::L3 => Some("P = a (z^n + e^{iψ} k^n)"),
            Self::L4 => Some("P = a z^n + b, phases aligned"),
            Self::T2 => Some("P = a z^n + b, |b| = |a| k^n"),
            Self::T3 | Self::C5 => Some("P = a z^n + b, |b| >= |a| k^n"),
            Self::C6 => Some("P = a z^n + b, |a| = |b|"),
            _ => None,
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatementId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::all()
            .find(|id| id.as_str().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownStatement(s.to_string()))
    }
}

/// One evaluated instance of an inequality.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackResult {
    pub statement: StatementId,
    pub z: Complex64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub rel_slack: f64,
    pub params: ParamsEcho,
}

impl SlackResult {
    pub fn new(
        statement: StatementId,
        z: Complex64,
        lhs: f64,
        rhs: f64,
        params: ParamsEcho,
    ) -> Self {
        let slack = rhs - lhs;
        Self {
            statement,
            z,
            lhs,
            rhs,
            slack,
            rel_slack: slack / rhs.max(REL_SLACK_FLOOR),
            params,
        }
    }

    /// Same instance with the right-hand side multiplied by `factor`.
    pub fn with_scaled_rhs(&self, factor: f64) -> Self {
        Self::new(
            self.statement,
            self.z,
            self.lhs,
            self.rhs * factor,
            self.params.clone(),
        )
    }

    pub fn is_violation(&self, tol: f64) -> bool {
        self.rel_slack.is_nan() || self.rel_slack < -tol
    }
}

/// A self-contained inequality instance: what the CLI reads with
/// `case --input` and what reports embed for their worst cases.
///
/// For `t1`/`c1`, `p` is the dominated polynomial and `f` the dominating
/// one. Every other statement uses only `p` (the polynomial called `F` in
/// the min-modulus bound).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub statement: StatementId,
    pub operator: BnOperator,
    pub p: ComplexPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<ComplexPoly>,
    pub params: CaseParams,
}
