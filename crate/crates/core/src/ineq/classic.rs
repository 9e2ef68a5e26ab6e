//! The classical inequalities recovered by specialising the operator and
//! the parameters: derivative and growth bounds on the unit circle, their
//! refinements for polynomials without zeros in the unit disk, and the
//! pointwise forms with `α`, `β`.
//!
//! All of them live on `k = 1`. Only `R`, `α` and `β` are read from the
//! parameters; the degree is the operator's `n`.

use num_complex::Complex64;

use super::statements::check_degree_at_most;
use super::{CaseParams, ParamsEcho, SlackResult, StatementId};
use crate::bnop::BnOperator;
use crate::circle;
use crate::poly::ComplexPoly;
use crate::{Error, Result};

use super::Evaluator;

impl Evaluator {
    /// Evaluates a classical statement. Max-type statements give a single
    /// result located at the maximiser of the left side; the pointwise ones
    /// (`e7`, `e8`, `qe1`, `qe2`) give one result per evaluation point.
    pub fn eval_classic(
        &self,
        id: StatementId,
        op: &BnOperator,
        p: &ComplexPoly,
        params: &CaseParams,
    ) -> Result<Vec<SlackResult>> {
        if !id.is_classic() {
            return Err(Error::UnknownStatement(format!(
                "{id} is not a classical statement"
            )));
        }
        let n = op.n();
        let big_r = params.big_r();
        let echo = ParamsEcho {
            n,
            k: 1.0,
            r: 1.0,
            big_r,
            alpha: params.alpha(),
            beta: params.beta(),
        };
        if id.zero_hypothesis() == super::ZeroHypothesis::NoneInOpenDisk {
            if p.degree() != n {
                return Err(Error::Hypothesis(format!(
                    "P must have degree {n}, has {}",
                    p.degree()
                )));
            }
            if !circle::no_zeros_in_open_disk(p, 1.0)? {
                return Err(Error::Hypothesis("P vanishes in |z| < 1".into()));
            }
        } else {
            check_degree_at_most(p, n)?;
        }

        let nf = n as f64;
        let rn = big_r.powi(n as i32);
        let max_p = self.max_on_circle(p, 1.0)?.value;
        let min_p = || -> Result<f64> { Ok(self.min_on_circle(p, 1.0)?.value) };
        let single = |lhs_max: circle::CircleExtremum, rhs: f64| {
            vec![SlackResult::new(
                id,
                lhs_max.point(),
                lhs_max.value,
                rhs,
                echo.clone(),
            )]
        };
        // Φ with k = r = 1: β{((R+1)/2)^n − |α|} − α
        let phi = params.beta() * (((big_r + 1.0) / 2.0).powi(n as i32) - params.alpha().norm())
            - params.alpha();

        Ok(match id {
            StatementId::Eq1 => single(self.max_on_circle(&p.derivative(), 1.0)?, nf * max_p),
            StatementId::Eq2 => single(self.max_on_circle(p, big_r)?, rn * max_p),
            StatementId::Eq3 => single(self.max_on_circle(&p.derivative(), 1.0)?, 0.5 * nf * max_p),
            StatementId::Eq4 => single(self.max_on_circle(p, big_r)?, 0.5 * (rn + 1.0) * max_p),
            StatementId::Eq5 => single(
                self.max_on_circle(&p.derivative(), 1.0)?,
                0.5 * nf * (max_p - min_p()?),
            ),
            StatementId::Eq6 => single(
                self.max_on_circle(p, big_r)?,
                0.5 * (rn + 1.0) * max_p - 0.5 * (rn - 1.0) * min_p()?,
            ),
            StatementId::E7 | StatementId::E8 => {
                let lhs_poly = ComplexPoly::linear_combine(
                    Complex64::new(1.0, 0.0),
                    &p.scale_compose(Complex64::new(big_r, 0.0)),
                    phi,
                    p,
                );
                let outer = (Complex64::new(rn, 0.0) + phi).norm();
                let inner = (Complex64::new(1.0, 0.0) + phi).norm();
                params
                    .zs()
                    .iter()
                    .map(|&z| {
                        let zn = z.norm().powi(n as i32);
                        let rhs = if id == StatementId::E7 {
                            zn * outer * max_p
                        } else {
                            0.5 * (outer * zn + inner) * max_p
                        };
                        SlackResult::new(id, z, lhs_poly.eval(z).norm(), rhs, echo.clone())
                    })
                    .collect()
            }
            StatementId::Qe1 | StatementId::Qe2 => {
                let image = op.apply(p)?;
                let lambda0 = op.lambda0().norm();
                params
                    .zs()
                    .iter()
                    .map(|&z| {
                        let m = op.monomial_image_abs_at(z);
                        let rhs = if id == StatementId::Qe1 {
                            m * max_p
                        } else {
                            0.5 * (m + lambda0) * max_p
                        };
                        SlackResult::new(id, z, image.eval(z).norm(), rhs, echo.clone())
                    })
                    .collect()
            }
            _ => unreachable!("main statements are rejected above"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(big_r: f64) -> CaseParams {
        CaseParams::new(1.0, 1.0, big_r, c(0.0, 0.0), c(0.0, 0.0), vec![c(1.0, 0.0)]).unwrap()
    }

    fn only(v: Vec<SlackResult>) -> SlackResult {
        assert_eq!(v.len(), 1);
        v.into_iter().next().unwrap()
    }

    #[test]
    fn bernstein_equality_for_monomials() {
        let ev = Evaluator::default();
        for n in 1..7 {
            let op = BnOperator::identity(n).unwrap();
            let p = ComplexPoly::monomial(c(0.0, 2.0), n);
            let r = only(
                ev.eval_classic(StatementId::Eq1, &op, &p, &params(2.0))
                    .unwrap(),
            );
            assert!(r.rel_slack.abs() < 1e-9);
            let r = only(
                ev.eval_classic(StatementId::Eq2, &op, &p, &params(2.0))
                    .unwrap(),
            );
            assert!(r.rel_slack.abs() < 1e-9);
        }
    }

    #[test]
    fn erdos_lax_equality() {
        let ev = Evaluator::default();
        let op = BnOperator::identity(3).unwrap();
        let p = ComplexPoly::from_real(&[1.0, 0.0, 0.0, 1.0]);
        let r = only(
            ev.eval_classic(StatementId::Eq3, &op, &p, &params(2.0))
                .unwrap(),
        );
        assert!((r.lhs - 3.0).abs() < 1e-9 && (r.rhs - 3.0).abs() < 1e-9);
        let r = only(
            ev.eval_classic(StatementId::Eq4, &op, &p, &params(2.0))
                .unwrap(),
        );
        assert!((r.lhs - 9.0).abs() < 1e-9 && (r.rhs - 9.0).abs() < 1e-9);
    }

    #[test]
    fn refined_forms() {
        let ev = Evaluator::default();
        let op = BnOperator::identity(2).unwrap();
        // z^2 + 3: Max 4, Min 2, Max|P'| = 2, (n/2)(Max - Min) = 2
        let p = ComplexPoly::from_real(&[3.0, 0.0, 1.0]);
        let r = only(
            ev.eval_classic(StatementId::Eq5, &op, &p, &params(2.0))
                .unwrap(),
        );
        assert!((r.lhs - 2.0).abs() < 1e-9 && (r.rhs - 2.0).abs() < 1e-9);
        // Max_{|z|=2}|z^2+3| = 7 = (5/2)4 - (3/2)2
        let r = only(
            ev.eval_classic(StatementId::Eq6, &op, &p, &params(2.0))
                .unwrap(),
        );
        assert!((r.lhs - 7.0).abs() < 1e-9 && (r.rhs - 7.0).abs() < 1e-9);
    }

    #[test]
    fn pointwise_forms() {
        let ev = Evaluator::default();
        let op = BnOperator::identity(1).unwrap();
        let p = ComplexPoly::from_real(&[1.0, 1.0]);
        let r = only(
            ev.eval_classic(StatementId::E8, &op, &p, &params(2.0))
                .unwrap(),
        );
        assert!((r.lhs - 3.0).abs() < 1e-12 && (r.rhs - 3.0).abs() < 1e-9);

        let op = BnOperator::z_derivative(3).unwrap();
        let p = ComplexPoly::monomial(c(1.0, 0.0), 3);
        let r = only(
            ev.eval_classic(StatementId::Qe1, &op, &p, &params(2.0))
                .unwrap(),
        );
        assert!((r.lhs - 3.0).abs() < 1e-12 && (r.rhs - 3.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_main_statements_and_bad_degree() {
        let ev = Evaluator::default();
        let op = BnOperator::identity(2).unwrap();
        let p = ComplexPoly::from_real(&[1.0, 1.0]);
        assert!(ev
            .eval_classic(StatementId::T2, &op, &p, &params(2.0))
            .is_err());
        assert!(matches!(
            ev.eval_classic(StatementId::Eq3, &op, &p, &params(2.0)),
            Err(Error::Hypothesis(_))
        ));
        let cubic = ComplexPoly::from_real(&[1.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            ev.eval_classic(StatementId::Eq1, &op, &cubic, &params(2.0)),
            Err(Error::DegreeOverflow { .. })
        ));
    }
}
