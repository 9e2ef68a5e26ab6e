use num_complex::Complex64;

use super::{Case, CaseParams, SlackResult, StatementId, ZeroHypothesis};
use crate::bnop::BnOperator;
use crate::circle::{self, CircleExtremum};
use crate::poly::ComplexPoly;
use crate::{Error, Result};

/// Tolerance on `|P| <= |F|` on `|z| = k`, relative to `Max|F|`.
pub const DOMINATION_TOL: f64 = 1e-9;

/// Evaluates inequality instances. All circle extrema are computed at
/// `extremum_tol`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluator {
    pub extremum_tol: f64,
}

impl Default for Evaluator {
    fn default() -> Self {
        Self {
            extremum_tol: circle::DEFAULT_TOL,
        }
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn real(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

impl Evaluator {
    pub fn new(extremum_tol: f64) -> Result<Self> {
        if !(extremum_tol > 0.0 && extremum_tol.is_finite()) {
            return Err(Error::InvalidTolerance(extremum_tol));
        }
        Ok(Self { extremum_tol })
    }

    pub fn max_on_circle(&self, p: &ComplexPoly, k: f64) -> Result<CircleExtremum> {
        circle::max_modulus(p, k, self.extremum_tol)
    }

    pub fn min_on_circle(&self, p: &ComplexPoly, k: f64) -> Result<CircleExtremum> {
        circle::min_modulus(p, k, self.extremum_tol)
    }

    /// `B[P∘(outer·z)] + Φ B[P∘(inner·z)]` as a polynomial in `z`.
    pub fn combined(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        phi: Complex64,
        outer: f64,
        inner: f64,
    ) -> Result<ComplexPoly> {
        let big = op.apply(&p.scale_compose(real(outer)))?;
        let small = op.apply(&p.scale_compose(real(inner)))?;
        Ok(ComplexPoly::linear_combine(one(), &big, phi, &small))
    }

    /// `|P(R e^{iθ})| >= ((R+k)/(r+k))^n |P(r e^{iθ})|` for `P` with all zeros
    /// in `|z| <= k`, `R >= r`, `R r >= k^2`. Here `lhs` is the scaled small
    /// circle value and `rhs` is `|P(R e^{iθ})|`.
    pub fn eval_lemma_growth(
        &self,
        p: &ComplexPoly,
        k: f64,
        r: f64,
        big_r: f64,
        theta: f64,
    ) -> Result<SlackResult> {
        if ![k, r, big_r, theta].iter().all(|x| x.is_finite()) || k <= 0.0 || r <= 0.0 {
            return Err(Error::InvalidParams("need finite k, r > 0".into()));
        }
        if big_r < r {
            return Err(Error::Hypothesis(format!(
                "need R >= r, got R = {big_r}, r = {r}"
            )));
        }
        if big_r * r < k * k {
            return Err(Error::Hypothesis(format!(
                "need R r >= k^2, got {}",
                big_r * r
            )));
        }
        if !circle::all_zeros_in_closed_disk(p, k)? {
            return Err(Error::Hypothesis(format!("P has zeros outside |z| <= {k}")));
        }
        let n = p.degree();
        let unit = Complex64::from_polar(1.0, theta);
        let factor = ((big_r + k) / (r + k)).powi(n as i32);
        let lhs = factor * p.eval(unit * r).norm();
        let rhs = p.eval(unit * big_r).norm();
        let echo = super::ParamsEcho {
            n,
            k,
            r,
            big_r,
            ..Default::default()
        };
        Ok(SlackResult::new(StatementId::L1, unit, lhs, rhs, echo))
    }

    pub fn eval_t1_comparison(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        f: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        self.comparison(StatementId::T1, op, p, f, params)
    }

    fn comparison(
        &self,
        id: StatementId,
        op: &BnOperator,
        p: &ComplexPoly,
        f: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        let n = op.n();
        if f.degree() != n {
            return Err(Error::Hypothesis(format!(
                "F must have degree {n}, has {}",
                f.degree()
            )));
        }
        check_degree_at_most(p, n)?;
        let k = params.k();
        if !circle::all_zeros_in_closed_disk(f, k)? {
            return Err(Error::Hypothesis(format!("F has zeros outside |z| <= {k}")));
        }
        if !circle::certify_dominated(p, f, k, DOMINATION_TOL)? {
            return Err(Error::Hypothesis(format!("|P| <= |F| fails on |z| = {k}")));
        }
        let phi = params.phi_k(n);
        let lhs_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let rhs_poly = self.combined(op, f, phi, params.big_r(), params.r())?;
        Ok(params
            .zs()
            .iter()
            .map(|&z| {
                SlackResult::new(
                    id,
                    z,
                    lhs_poly.eval(z).norm(),
                    rhs_poly.eval(z).norm(),
                    params.echo(n),
                )
            })
            .collect())
    }

    /// `(1/k^n)|R^n + r^n Φ| |B[z^n]|` at `z`, the factor multiplying `Max|P|`
    /// in the max-modulus bounds.
    fn monomial_weight(op: &BnOperator, params: &CaseParams, phi: Complex64, z: Complex64) -> f64 {
        let n = op.n() as i32;
        let weight = real(params.big_r().powi(n)) + phi * params.r().powi(n);
        op.monomial_image_abs_at(z) * weight.norm() / params.k().powi(n)
    }

    pub fn eval_c2_bound(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        self.max_bound(StatementId::C2, op, p, params)
    }

    fn max_bound(
        &self,
        id: StatementId,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        let n = op.n();
        check_degree_at_most(p, n)?;
        let phi = params.phi_k(n);
        let lhs_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let max_p = self.max_on_circle(p, params.k())?.value;
        Ok(params
            .zs()
            .iter()
            .map(|&z| {
                let rhs = Self::monomial_weight(op, params, phi, z) * max_p;
                SlackResult::new(id, z, lhs_poly.eval(z).norm(), rhs, params.echo(n))
            })
            .collect())
    }

    /// `Min_{|z|=1}|B[F∘σ] + Φ B[F∘ρ]| >= (|B[z^n]|/k^n)|R^n + r^n Φ| Min_{|z|=k}|F|`.
    /// Reported with `lhs` the lower bound and `rhs` the minimum, at the
    /// minimizing point.
    pub fn eval_c3_min_bound(
        &self,
        op: &BnOperator,
        f: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<SlackResult> {
        let n = op.n();
        if f.degree() != n {
            return Err(Error::Hypothesis(format!(
                "F must have degree {n}, has {}",
                f.degree()
            )));
        }
        let k = params.k();
        if !circle::all_zeros_in_closed_disk(f, k)? {
            return Err(Error::Hypothesis(format!("F has zeros outside |z| <= {k}")));
        }
        let phi = params.phi_k(n);
        let combined = self.combined(op, f, phi, params.big_r(), params.r())?;
        let min_combined = self.min_on_circle(&combined, 1.0)?;
        let min_f = self.min_on_circle(f, k)?.value;
        let lhs = Self::monomial_weight(op, params, phi, one()) * min_f;
        Ok(SlackResult::new(
            StatementId::C3,
            min_combined.point(),
            lhs,
            min_combined.value,
            params.echo(n),
        ))
    }

    pub fn eval_t2_bound(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        let n = op.n();
        self.check_no_zero_hypothesis(StatementId::T2, op, p, params)?;
        let phi = params.phi_k(n);
        let lhs_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let max_p = self.max_on_circle(p, params.k())?.value;
        let constant_term = (one() + phi).norm() * op.lambda0().norm();
        Ok(params
            .zs()
            .iter()
            .map(|&z| {
                let rhs = 0.5 * (Self::monomial_weight(op, params, phi, z) + constant_term) * max_p;
                SlackResult::new(
                    StatementId::T2,
                    z,
                    lhs_poly.eval(z).norm(),
                    rhs,
                    params.echo(n),
                )
            })
            .collect())
    }

    pub fn eval_t3_refined(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        self.refined(StatementId::T3, op, p, params)
    }

    /// Returns the refined results together with the coefficient
    /// `C = (|B[z^n]|/k^n)|R^n + r^nΦ| − |1+Φ||λ0|` at each point.
    pub fn refined_with_coefficient(
        &self,
        id: StatementId,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<(SlackResult, f64)>> {
        let n = op.n();
        self.check_no_zero_hypothesis(id, op, p, params)?;
        let phi = params.phi_k(n);
        let lhs_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let max_p = self.max_on_circle(p, params.k())?.value;
        let min_p = self.min_on_circle(p, params.k())?.value;
        let constant_term = (one() + phi).norm() * op.lambda0().norm();
        Ok(params
            .zs()
            .iter()
            .map(|&z| {
                let weight = Self::monomial_weight(op, params, phi, z);
                let a = weight + constant_term;
                let c = weight - constant_term;
                let rhs = 0.5 * (a * max_p - c * min_p);
                let result = SlackResult::new(id, z, lhs_poly.eval(z).norm(), rhs, params.echo(n));
                (result, c)
            })
            .collect())
    }

    fn refined(
        &self,
        id: StatementId,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        Ok(self
            .refined_with_coefficient(id, op, p, params)?
            .into_iter()
            .map(|(r, _)| r)
            .collect())
    }

    /// `k^n |B[Q∘τ](z) + Φ B[Q∘η](z)|` with `Q = z^n conj(P(1/conj z))`, as
    /// a polynomial in `z` (without the `k^n` factor).
    fn reciprocal_combined(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
        phi: Complex64,
    ) -> Result<ComplexPoly> {
        let q = p.conj_reciprocal(op.n())?;
        let k2 = params.k() * params.k();
        self.combined(op, &q, phi, params.big_r() / k2, params.r() / k2)
    }

    pub fn eval_l3(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        let n = op.n();
        self.check_no_zero_hypothesis(StatementId::L3, op, p, params)?;
        let phi = params.phi_k(n);
        let lhs_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let rhs_poly = self.reciprocal_combined(op, p, params, phi)?;
        let kn = params.k().powi(n as i32);
        Ok(params
            .zs()
            .iter()
            .map(|&z| {
                SlackResult::new(
                    StatementId::L3,
                    z,
                    lhs_poly.eval(z).norm(),
                    kn * rhs_poly.eval(z).norm(),
                    params.echo(n),
                )
            })
            .collect())
    }

    pub fn eval_l4(
        &self,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        let n = op.n();
        check_k_at_most_one(StatementId::L4, params)?;
        check_degree_at_most(p, n)?;
        let phi = params.phi_k(n);
        let p_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let q_poly = self.reciprocal_combined(op, p, params, phi)?;
        let kn = params.k().powi(n as i32);
        let max_p = self.max_on_circle(p, params.k())?.value;
        let constant_term = (one() + phi).norm() * op.lambda0().norm();
        Ok(params
            .zs()
            .iter()
            .map(|&z| {
                let lhs = p_poly.eval(z).norm() + kn * q_poly.eval(z).norm();
                let rhs = (constant_term + Self::monomial_weight(op, params, phi, z)) * max_p;
                SlackResult::new(StatementId::L4, z, lhs, rhs, params.echo(n))
            })
            .collect())
    }

    fn check_no_zero_hypothesis(
        &self,
        id: StatementId,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<()> {
        check_k_at_most_one(id, params)?;
        let n = op.n();
        if p.degree() != n {
            return Err(Error::Hypothesis(format!(
                "P must have degree {n}, has {}",
                p.degree()
            )));
        }
        let k = params.k();
        if !circle::no_zeros_in_open_disk(p, k)? {
            return Err(Error::Hypothesis(format!("P vanishes in |z| < {k}")));
        }
        Ok(())
    }

    /// Evaluates a full case, enforcing the statement's pinned parameters.
    pub fn evaluate(&self, case: &Case) -> Result<Vec<SlackResult>> {
        let id = case.statement;
        let (op, p, params) = (&case.operator, &case.p, &case.params);
        if id.pins_alpha() && params.alpha().norm() != 0.0 {
            return Err(Error::Hypothesis(format!("{id} requires alpha = 0")));
        }
        if id.pins_beta() && params.beta().norm() != 0.0 {
            return Err(Error::Hypothesis(format!("{id} requires beta = 0")));
        }
        match id {
            StatementId::L1 => params
                .zs()
                .iter()
                .map(|z| self.eval_lemma_growth(p, params.k(), params.r(), params.big_r(), z.arg()))
                .collect(),
            StatementId::T1 | StatementId::C1 => {
                let f = case.f.as_ref().ok_or_else(|| {
                    Error::InvalidParams(format!("{id} needs the polynomial `f`"))
                })?;
                self.comparison(id, op, p, f, params)
            }
            StatementId::C2 | StatementId::C4 => self.max_bound(id, op, p, params),
            StatementId::C3 => Ok(vec![self.eval_c3_min_bound(op, p, params)?]),
            StatementId::T2 => self.eval_t2_bound(op, p, params),
            StatementId::T3 | StatementId::C5 | StatementId::C6 => self.refined(id, op, p, params),
            StatementId::L3 => self.eval_l3(op, p, params),
            StatementId::L4 => self.eval_l4(op, p, params),
            classic => self.eval_classic(classic, op, p, params),
        }
    }

    /// `sup_{|z|=1}` of the left side for the statements whose left side is
    /// `|B[P∘σ] + Φ B[P∘ρ]|` (plus the reciprocal term for `l4`).
    pub fn sup_lhs_on_unit_circle(&self, case: &Case) -> Result<f64> {
        let id = case.statement;
        if id.is_classic() || matches!(id, StatementId::L1 | StatementId::C3) {
            return Err(Error::InvalidParams(format!(
                "{id} has no combined left side"
            )));
        }
        let (op, p, params) = (&case.operator, &case.p, &case.params);
        let n = op.n();
        let phi = params.phi_k(n);
        let lhs_poly = self.combined(op, p, phi, params.big_r(), params.r())?;
        let reciprocal = if id == StatementId::L4 {
            Some(self.reciprocal_combined(op, p, params, phi)?)
        } else {
            None
        };
        let kn = params.k().powi(n as i32);
        let lhs = |theta: f64| {
            let z = Complex64::from_polar(1.0, theta);
            let base = lhs_poly.eval(z).norm();
            match &reciprocal {
                Some(q) => base + kn * q.eval(z).norm(),
                None => base,
            }
        };
        let (_, sup) = circle::extremum_on_circle(
            lhs,
            circle::grid_size(n),
            n,
            self.extremum_tol,
            circle::ExtremumKind::Max,
        );
        Ok(sup)
    }

    /// Relative gap between the two sides for a member of the statement's
    /// equality family. Families with pointwise equality are compared at
    /// every evaluation point; the half-sum bounds (`t2`, `t3`, `c5`, `c6`,
    /// `l4`) compare the supremum of the left side over `|z| = 1` with the
    /// right side there.
    pub fn sharpness_gap(&self, case: &Case) -> Result<f64> {
        let id = case.statement;
        if id.extremal_family().is_none() {
            return Err(Error::NoExtremalFamily(id.to_string()));
        }
        if matches!(
            id,
            StatementId::T2 | StatementId::T3 | StatementId::C5 | StatementId::C6 | StatementId::L4
        ) {
            let on_unit = Case {
                params: case.params.with_zs(vec![one()])?,
                ..case.clone()
            };
            let rhs = self.evaluate(&on_unit)?[0].rhs;
            let sup = self.sup_lhs_on_unit_circle(case)?;
            return Ok((rhs - sup).abs() / rhs.max(super::REL_SLACK_FLOOR));
        }
        Ok(self
            .evaluate(case)?
            .iter()
            .map(|r| r.slack.abs() / r.lhs.max(r.rhs).max(super::REL_SLACK_FLOOR))
            .fold(0.0, f64::max))
    }

    /// Zero-location check matching a statement's hypothesis.
    pub fn hypothesis_holds(&self, case: &Case) -> Result<bool> {
        let k = if case.statement.is_classic() {
            1.0
        } else {
            case.params.k()
        };
        let target = match case.statement {
            StatementId::T1 | StatementId::C1 => case.f.as_ref().unwrap_or(&case.p),
            _ => &case.p,
        };
        Ok(match case.statement.zero_hypothesis() {
            ZeroHypothesis::None => true,
            ZeroHypothesis::InClosedDisk => circle::all_zeros_in_closed_disk(target, k)?,
            ZeroHypothesis::NoneInOpenDisk => circle::no_zeros_in_open_disk(target, k)?,
        })
    }
}

pub(super) fn check_degree_at_most(p: &ComplexPoly, n: usize) -> Result<()> {
    if p.degree() > n {
        return Err(Error::DegreeOverflow {
            degree: p.degree(),
            n,
        });
    }
    Ok(())
}

fn check_k_at_most_one(id: StatementId, params: &CaseParams) -> Result<()> {
    if id.requires_k_at_most_one() && params.k() > 1.0 {
        return Err(Error::Hypothesis(format!(
            "{id} requires k <= 1, got {}",
            params.k()
        )));
    }
    Ok(())
}
