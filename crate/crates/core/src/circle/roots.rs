//! Simultaneous root finding by the Aberth–Ehrlich iteration.

use num_complex::Complex64;

use crate::bnop::quadratic_zeros;
use crate::poly::ComplexPoly;
use crate::{Error, Result};

pub const MAX_ITERATIONS: usize = 200;

/// Residual bound accepted for a root `z`:
/// `|p(z)| <= RESIDUAL_TOL * max|a_j| * max(1, |z|)^n`.
pub const RESIDUAL_TOL: f64 = 1e-9;

/// All roots of `p`, repeated according to multiplicity.
///
/// Exact zero roots are split off first; degrees one and two use closed
/// forms. Non-convergence is only reported when some root fails the
/// residual bound after the iteration cap.
pub fn find_roots(p: &ComplexPoly) -> Result<Vec<Complex64>> {
    if p.degree() == 0 {
        return Err(Error::ConstantPolynomial);
    }
    let leading_zeros = p.coeffs().iter().take_while(|c| c.norm() == 0.0).count();
    let mut roots = vec![Complex64::default(); leading_zeros];
    let reduced = ComplexPoly::new(p.coeffs()[leading_zeros..].to_vec());
    let monic: Vec<Complex64> = reduced
        .coeffs()
        .iter()
        .map(|&a| a / reduced.leading())
        .collect();

    match reduced.degree() {
        0 => {}
        1 => roots.push(-monic[0]),
        2 => roots.extend(quadratic_zeros(monic[2], monic[1], monic[0])),
        _ => roots.extend(aberth(&monic)?),
    }
    Ok(roots)
}

/// `|p(z)| / (max|a_j| max(1, |z|)^n)`.
pub(crate) fn normalized_residual(coeffs: &[Complex64], z: Complex64) -> f64 {
    let value = coeffs
        .iter()
        .rev()
        .fold(Complex64::default(), |acc, &a| acc * z + a);
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    value.norm() / (scale * z.norm().max(1.0).powi(coeffs.len() as i32 - 1))
}

fn eval_with_derivative(
    coeffs: &[Complex64],
    deriv: &[Complex64],
    z: Complex64,
) -> (Complex64, Complex64) {
    let horner = |c: &[Complex64]| {
        c.iter()
            .rev()
            .fold(Complex64::default(), |acc, &a| acc * z + a)
    };
    (horner(coeffs), horner(deriv))
}

/// Aberth–Ehrlich on a monic polynomial of degree at least 3.
fn aberth(monic: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = monic.len() - 1;
    let deriv: Vec<Complex64> = monic
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, &a)| a * j as f64)
        .collect();

    let cauchy = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = 0.9 * cauchy;
    // fixed angular jitter keeps the start off any symmetry axis of p
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / n as f64 + 0.4 + 0.01 * j as f64;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    let mut done = vec![false; n];

    for _ in 0..MAX_ITERATIONS {
        let mut all_done = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (value, slope) = eval_with_derivative(monic, &deriv, z[i]);
            if value.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = value / slope;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::default()
                    } else {
                        Complex64::new(1.0, 0.0) / d
                    }
                })
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                // p'(z) = 0 at the iterate; nudge and retry next sweep
                step = Complex64::new(1e-8 * (1.0 + z[i].norm()), 1e-8);
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
    }

    let worst = z
        .iter()
        .map(|&root| normalized_residual(monic, root))
        .fold(0.0, f64::max);
    if worst > RESIDUAL_TOL {
        return Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            residual: worst,
        });
    }
    Ok(z)
}
