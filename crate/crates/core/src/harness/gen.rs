//! Random generators for operators, polynomials, parameters and whole cases.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{ParamMode, SuiteConfig};
use crate::bnop::BnOperator;
use crate::circle::{self, ExtremumKind};
use crate::ineq::{Case, CaseParams, StatementId, ZeroHypothesis};
use crate::poly::ComplexPoly;
use crate::{Error, Result};

/// Maximum number of rejected draws for an admissible operator.
pub const OPERATOR_REJECTION_CAP: usize = 10_000;

/// Default evaluation points: eight on the unit circle, four on `|z| = 1.5`
/// and `z = 2`.
pub fn default_points() -> Vec<Complex64> {
    let mut zs: Vec<Complex64> = (0..8)
        .map(|j| Complex64::from_polar(1.0, j as f64 * PI / 4.0))
        .collect();
    zs.extend((0..4).map(|j| Complex64::from_polar(1.5, PI / 8.0 + j as f64 * PI / 2.0)));
    zs.push(Complex64::new(2.0, 0.0));
    zs
}

fn unit(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))
}

/// Area-uniform point of the closed unit disk.
pub fn disk_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let radius = rng.gen::<f64>().sqrt();
    Complex64::from_polar(radius, rng.gen_range(0.0..TAU))
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn leading(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU))
}

/// Degree-`n` polynomial with all zeros in `|z| <= k`.
pub fn poly_zeros_in_disk(rng: &mut ChaCha8Rng, n: usize, k: f64) -> Result<ComplexPoly> {
    let roots: Vec<Complex64> = (0..n).map(|_| disk_point(rng) * k).collect();
    ComplexPoly::from_roots(leading(rng), &roots)
}

/// Degree-`n` polynomial with no zeros in `|z| < k`; about one root in ten
/// sits exactly on `|z| = k`.
pub fn poly_zeros_outside(rng: &mut ChaCha8Rng, n: usize, k: f64) -> Result<ComplexPoly> {
    let roots: Vec<Complex64> = (0..n)
        .map(|_| {
            let modulus = if rng.gen_bool(0.1) {
                k
            } else {
                rng.gen_range(k..k + 3.0)
            };
            Complex64::from_polar(modulus, rng.gen_range(0.0..TAU))
        })
        .collect();
    ComplexPoly::from_roots(leading(rng), &roots)
}

/// Polynomial of degree exactly `degree` with coefficients uniform in the
/// square `[-1, 1]^2`.
pub fn poly_generic(rng: &mut ChaCha8Rng, degree: usize) -> ComplexPoly {
    let mut coeffs: Vec<Complex64> = (0..=degree)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    coeffs[degree] = leading(rng);
    ComplexPoly::new(coeffs)
}

/// Admissible operator for degree `n`. With probability 0.3 one of the
/// canonical triples `(1,0,0)`, `(0,2/n,0)`, `(0,0,1)` is returned; otherwise
/// the coefficients are drawn from the unit disk until admissible.
pub fn operator(rng: &mut ChaCha8Rng, n: usize) -> Result<BnOperator> {
    if rng.gen_bool(0.3) {
        let choices = if n == 1 { 2 } else { 3 };
        return match rng.gen_range(0..choices) {
            0 => BnOperator::identity(n),
            1 => BnOperator::z_derivative(n),
            _ => BnOperator::validate(
                Complex64::default(),
                Complex64::default(),
                Complex64::new(1.0, 0.0),
                n,
            ),
        };
    }
    for _ in 0..OPERATOR_REJECTION_CAP {
        let (l0, l1, l2) = (disk_point(rng), disk_point(rng), disk_point(rng));
        if let Ok(op) = BnOperator::validate(l0, l1, l2, n) {
            return Ok(op);
        }
    }
    Err(Error::RejectionCap(OPERATOR_REJECTION_CAP))
}

fn sample_coefficient(rng: &mut ChaCha8Rng, mode: ParamMode) -> Complex64 {
    match mode {
        ParamMode::Interior => disk_point(rng),
        ParamMode::Boundary => unit(rng),
        ParamMode::Mixed => {
            if rng.gen_bool(0.25) {
                unit(rng)
            } else {
                disk_point(rng)
            }
        }
    }
}

/// Samples `(k, r, R, α, β)` for `id`, honouring fixed values in `config`.
pub fn params(rng: &mut ChaCha8Rng, id: StatementId, config: &SuiteConfig) -> Result<CaseParams> {
    let fixed = &config.fixed;
    let (k, r) = if id.is_classic() {
        (1.0, 1.0)
    } else {
        let k_hi = if id.requires_k_at_most_one() {
            1.0
        } else {
            2.0
        };
        let mut k = fixed.k.unwrap_or_else(|| {
            if rng.gen_bool(0.25) {
                1.0
            } else {
                rng.gen_range(0.25..k_hi)
            }
        });
        if fixed.k.is_none() {
            if let Some(r) = fixed.r {
                k = k.min(r);
            }
            if let Some(big_r) = fixed.big_r {
                k = k.min(big_r / 2.0);
            }
        }
        let r = fixed.r.unwrap_or_else(|| {
            let gap = if rng.gen_bool(0.25) {
                0.0
            } else {
                log_uniform(rng, 1e-3, 1.0)
            };
            match fixed.big_r {
                Some(big_r) => k + gap.min((big_r - k) / 2.0),
                None => k + gap,
            }
        });
        (k, r)
    };
    let big_r = fixed
        .big_r
        .unwrap_or_else(|| r + log_uniform(rng, 1e-3, 2.0));
    let mut alpha = fixed
        .alpha
        .unwrap_or_else(|| sample_coefficient(rng, config.mode));
    let mut beta = fixed
        .beta
        .unwrap_or_else(|| sample_coefficient(rng, config.mode));
    if id.pins_alpha() {
        alpha = Complex64::default();
    }
    if id.pins_beta() {
        beta = Complex64::default();
    }
    CaseParams::new(k, r, big_r, alpha, beta, default_points())
}

fn degree(rng: &mut ChaCha8Rng, config: &SuiteConfig) -> usize {
    rng.gen_range(config.n_min..=config.n_max)
}

/// `P = e^{iγ}F`, `a F + b z^n Min|F| / k^n` with `|a| + |b| <= 1`, or a
/// generic polynomial scaled under `|F|` on `|z| = k`.
fn dominated(
    rng: &mut ChaCha8Rng,
    f: &ComplexPoly,
    k: f64,
    extremal: bool,
    tol: f64,
) -> Result<ComplexPoly> {
    let n = f.degree();
    if extremal {
        return Ok(f.scale(unit(rng)));
    }
    if rng.gen_bool(0.5) {
        let share = rng.gen::<f64>();
        let total = rng.gen::<f64>();
        let a = unit(rng) * (share * total);
        let b = unit(rng) * ((1.0 - share) * total);
        let min_f = circle::min_modulus(f, k, tol)?.value;
        let zn = ComplexPoly::monomial(b * (min_f / k.powi(n as i32)), n);
        return Ok(ComplexPoly::linear_combine(
            a,
            f,
            Complex64::new(1.0, 0.0),
            &zn,
        ));
    }
    let d = rng.gen_range(0..=n);
    let g = poly_generic(rng, d);
    let ratio = |theta: f64| {
        let z = Complex64::from_polar(k, theta);
        g.eval(z).norm() / f.eval(z).norm()
    };
    let (_, worst) =
        circle::extremum_on_circle(ratio, circle::grid_size(n), n, tol, ExtremumKind::Max);
    if !worst.is_finite() || worst <= 0.0 {
        return Ok(f.scale(Complex64::new(0.5, 0.0)));
    }
    Ok(g.scale(Complex64::new(
        rng.gen_range(0.1..1.0) / (worst * (1.0 + 1e-6)),
        0.0,
    )))
}

/// `a z^n + b` whose two terms line up in `B[P∘σ] + Φ B[P∘ρ]` at `anchor`.
fn aligned_binomial(
    rng: &mut ChaCha8Rng,
    op: &BnOperator,
    params: &CaseParams,
    anchor: Complex64,
    b_modulus_over_a: f64,
) -> ComplexPoly {
    let n = op.n();
    let a = leading(rng);
    let phi = params.phi_k(n);
    let top = op.monomial_image()
        * anchor.powu(n as u32)
        * (Complex64::new(params.big_r().powi(n as i32), 0.0) + phi * params.r().powi(n as i32));
    let bottom = op.lambda0() * (Complex64::new(1.0, 0.0) + phi);
    let phase = if top.norm() > 0.0 && bottom.norm() > 0.0 {
        a.arg() + top.arg() - bottom.arg()
    } else {
        rng.gen_range(0.0..TAU)
    };
    let b = Complex64::from_polar(a.norm() * b_modulus_over_a, phase);
    let mut coeffs = vec![Complex64::default(); n + 1];
    coeffs[0] = b;
    coeffs[n] = a;
    ComplexPoly::new(coeffs)
}

/// Generates one case for `id`. When `extremal` is set the case belongs to
/// the statement's equality family and `anchor` is the point where equality
/// is attained (for the pointwise families every point is an equality
/// point).
pub fn case(
    rng: &mut ChaCha8Rng,
    id: StatementId,
    config: &SuiteConfig,
    extremal: bool,
) -> Result<Case> {
    let n = degree(rng, config);
    let params = params(rng, id, config)?;
    let k = params.k();
    let tol = config.extremum_tol;
    let extremal = extremal && id.extremal_family().is_some();
    let anchor_index = rng.gen_range(0..params.zs().len());
    let anchor = params.zs()[anchor_index];
    let kn = k.powi(n as i32);

    let op = match id {
        StatementId::L1
        | StatementId::Eq1
        | StatementId::Eq2
        | StatementId::Eq3
        | StatementId::Eq4
        | StatementId::Eq5
        | StatementId::Eq6
        | StatementId::E7
        | StatementId::E8 => BnOperator::identity(n)?,
        _ => operator(rng, n)?,
    };

    let mut f = None;
    let p = match id {
        StatementId::L1 => {
            if extremal {
                let root = Complex64::from_polar(k, anchor.arg() + PI);
                ComplexPoly::from_roots(leading(rng), &vec![root; n])?
            } else {
                poly_zeros_in_disk(rng, n, k)?
            }
        }
        StatementId::T1 | StatementId::C1 => {
            let big_f = poly_zeros_in_disk(rng, n, k)?;
            let p = dominated(rng, &big_f, k, extremal, tol)?;
            f = Some(big_f);
            p
        }
        StatementId::C3 => {
            if extremal {
                ComplexPoly::monomial(leading(rng), n)
            } else {
                poly_zeros_in_disk(rng, n, k)?
            }
        }
        StatementId::C2 | StatementId::C4 | StatementId::L4 if extremal => {
            if id == StatementId::L4 {
                let ratio = rng.gen_range(0.0..2.0) * kn;
                aligned_binomial(rng, &op, &params, anchor, ratio)
            } else {
                ComplexPoly::monomial(leading(rng), n)
            }
        }
        StatementId::T2 if extremal => aligned_binomial(rng, &op, &params, anchor, kn),
        StatementId::T3 | StatementId::C5 | StatementId::C6 if extremal => {
            let ratio = kn * rng.gen_range(1.0..2.0);
            aligned_binomial(rng, &op, &params, anchor, ratio)
        }
        StatementId::L3 if extremal => {
            let mut coeffs = vec![Complex64::default(); n + 1];
            let a = leading(rng);
            coeffs[n] = a;
            coeffs[0] = a * unit(rng) * kn;
            ComplexPoly::new(coeffs)
        }
        _ => match id.zero_hypothesis() {
            ZeroHypothesis::NoneInOpenDisk => {
                let radius = if id.is_classic() { 1.0 } else { k };
                poly_zeros_outside(rng, n, radius)?
            }
            _ => {
                // lower degrees are admissible here
                let d = if rng.gen_bool(0.2) {
                    rng.gen_range(0..n)
                } else {
                    n
                };
                poly_generic(rng, d)
            }
        },
    };

    let params = if extremal && id == StatementId::L1 {
        params.with_zs(vec![anchor])?
    } else {
        params
    };
    Ok(Case {
        statement: id,
        operator: op,
        p,
        f,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn default_points_shape() {
        let zs = default_points();
        assert_eq!(zs.len(), 13);
        assert!(zs.iter().all(|z| z.norm() >= 1.0 - 1e-15));
    }

    #[test]
    fn generated_polynomials_meet_their_zero_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..8 {
            let p = poly_zeros_in_disk(&mut rng, n, 0.7).unwrap();
            assert_eq!(p.degree(), n);
            assert!(circle::all_zeros_in_closed_disk(&p, 0.7).unwrap());
            let q = poly_zeros_outside(&mut rng, n, 0.7).unwrap();
            assert_eq!(q.degree(), n);
            assert!(circle::no_zeros_in_open_disk(&q, 0.7).unwrap());
        }
    }

    #[test]
    fn operators_are_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..9 {
            for _ in 0..50 {
                let op = operator(&mut rng, n).unwrap();
                let [a, b, c] = op.lambda();
                assert!(BnOperator::validate(a, b, c, n).is_ok());
            }
        }
    }

    #[test]
    fn pinned_parameters_are_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let config = SuiteConfig::default();
        for _ in 0..20 {
            let p = params(&mut rng, StatementId::C5, &config).unwrap();
            assert_eq!(p.alpha(), Complex64::default());
            assert!(p.k() <= 1.0);
            let p = params(&mut rng, StatementId::C4, &config).unwrap();
            assert_eq!(p.beta(), Complex64::default());
        }
    }
}
