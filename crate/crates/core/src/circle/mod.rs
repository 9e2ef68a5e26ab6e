//! Maximum and minimum modulus of a polynomial on `|z| = k`, root finding,
//! and zero-location predicates for closed and open disks.
//!
//! Extrema use a uniform angular grid of `max(4096, 256 n)` points followed
//! by golden-section refinement of the five best grid brackets. On the
//! circle, `|P(k e^{iθ})|^2` is a trigonometric polynomial of degree `n`,
//! so its angular derivative is bounded by `n` times its maximum; at that
//! grid density every bracket is far below the scale of a single bump.

mod roots;

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use roots::{find_roots, MAX_ITERATIONS, RESIDUAL_TOL};

use crate::poly::ComplexPoly;
use crate::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Relative width of the band around `|z| = k` inside which a root counts
/// as lying on the circle.
pub const BOUNDARY_BAND: f64 = 1e-9;

const REFINED_BRACKETS: usize = 5;
const CLUSTER_EPS: f64 = 1e-14;
const CLUSTER_SLACK: f64 = 8.0;
const CLUSTER_NEWTON_STEPS: usize = 50;
const GOLDEN_MAX_STEPS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleExtremum {
    pub value: f64,
    /// Angle in `[0, 2π)` where the extremum is attained.
    pub theta: f64,
    pub radius: f64,
    pub kind: ExtremumKind,
}

impl CircleExtremum {
    pub fn point(&self) -> Complex64 {
        Complex64::from_polar(self.radius, self.theta)
    }
}

pub fn grid_size(degree: usize) -> usize {
    4096.max(256 * degree)
}

fn check_radius_tol(k: f64, tol: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidRadius(k));
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    Ok(())
}

pub fn max_modulus(p: &ComplexPoly, k: f64, tol: f64) -> Result<CircleExtremum> {
    modulus_extremum(p, k, tol, ExtremumKind::Max)
}

pub fn min_modulus(p: &ComplexPoly, k: f64, tol: f64) -> Result<CircleExtremum> {
    modulus_extremum(p, k, tol, ExtremumKind::Min)
}

fn modulus_extremum(
    p: &ComplexPoly,
    k: f64,
    tol: f64,
    kind: ExtremumKind,
) -> Result<CircleExtremum> {
    check_radius_tol(k, tol)?;
    let f = |theta: f64| p.eval(Complex64::from_polar(k, theta)).norm();
    let (theta, value) = extremum_on_circle(f, grid_size(p.degree()), p.degree(), tol, kind);
    Ok(CircleExtremum {
        value,
        theta,
        radius: k,
        kind,
    })
}

/// Global extremum of a `2π`-periodic function of the angle.
///
/// `degree` scales the golden-section stopping width (`tol / 100 / (degree + 1)`),
/// and `grid` is the number of uniformly spaced samples. Returns `(θ, f(θ))`.
pub fn extremum_on_circle<F: Fn(f64) -> f64>(
    f: F,
    grid: usize,
    degree: usize,
    tol: f64,
    kind: ExtremumKind,
) -> (f64, f64) {
    let sign = match kind {
        ExtremumKind::Max => 1.0,
        ExtremumKind::Min => -1.0,
    };
    let g = |theta: f64| sign * f(theta);
    let step = TAU / grid as f64;
    let samples: Vec<f64> = (0..grid).map(|i| g(i as f64 * step)).collect();

    let mut peaks: Vec<usize> = (0..grid)
        .filter(|&i| {
            let prev = samples[(i + grid - 1) % grid];
            let next = samples[(i + 1) % grid];
            samples[i] >= prev && samples[i] >= next
        })
        .collect();
    peaks.sort_by(|&a, &b| samples[b].total_cmp(&samples[a]).then(a.cmp(&b)));
    peaks.truncate(REFINED_BRACKETS);

    let width_tol = (tol * 1e-2 / (degree as f64 + 1.0)).max(1e-15);
    let mut best = (0.0, f64::NEG_INFINITY);
    for &i in &peaks {
        let centre = i as f64 * step;
        let candidate = golden_max(&g, centre - step, centre + step, width_tol);
        let grid_point = (centre, samples[i]);
        for (theta, value) in [candidate, grid_point] {
            if value > best.1 {
                best = (theta, value);
            }
        }
    }
    (best.0.rem_euclid(TAU), sign * best.1)
}

/// Golden-section search for a maximum of `g` on `[lo, hi]`.
fn golden_max<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, width_tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - inv_phi * (hi - lo);
    let mut x2 = lo + inv_phi * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    for _ in 0..GOLDEN_MAX_STEPS {
        if hi - lo <= width_tol {
            break;
        }
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = g(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// True iff every root has modulus at most `k (1 + BOUNDARY_BAND)`.
/// Nonzero constants have no roots and pass; the zero polynomial fails.
pub fn all_zeros_in_closed_disk(p: &ComplexPoly, k: f64) -> Result<bool> {
    check_radius_tol(k, 1.0)?;
    if p.degree() == 0 {
        return Ok(!p.is_zero());
    }
    let limit = k + BOUNDARY_BAND * k;
    let roots = find_roots(p)?;
    Ok((0..roots.len())
        .all(|i| roots[i].norm() <= limit || cluster_centre(p, &roots, i).norm() <= limit))
}

/// True iff every root has modulus at least `k (1 - BOUNDARY_BAND)`.
/// Nonzero constants pass; the zero polynomial fails.
pub fn no_zeros_in_open_disk(p: &ComplexPoly, k: f64) -> Result<bool> {
    check_radius_tol(k, 1.0)?;
    if p.degree() == 0 {
        return Ok(!p.is_zero());
    }
    let limit = k - BOUNDARY_BAND * k;
    let roots = find_roots(p)?;
    Ok((0..roots.len())
        .all(|i| roots[i].norm() >= limit || cluster_centre(p, &roots, i).norm() >= limit))
}

/// Centre of the largest cluster around `roots[i]` that is as tight as the
/// rounding of an `m`-fold root. The computed copies of an `m`-fold root
/// spread over a radius of order `ε^{1/m}`; the root itself is recovered by
/// Newton's method on `p^{(m-1)}`, where it is simple, and accepted when it
/// is also a root of `p` to the residual tolerance. Returns `roots[i]` when no
/// cluster qualifies.
fn cluster_centre(p: &ComplexPoly, roots: &[Complex64], i: usize) -> Complex64 {
    let mut nearest: Vec<Complex64> = roots.to_vec();
    nearest.sort_by(|a, b| (a - roots[i]).norm().total_cmp(&(b - roots[i]).norm()));
    for m in (2..=roots.len()).rev() {
        let members = &nearest[..m];
        let centre = members.iter().sum::<Complex64>() / m as f64;
        let spread = members
            .iter()
            .map(|z| (z - centre).norm())
            .fold(0.0, f64::max);
        let allowed = CLUSTER_SLACK * CLUSTER_EPS.powf(1.0 / m as f64) * centre.norm().max(1.0);
        if spread > allowed {
            continue;
        }
        let mut d = p.clone();
        for _ in 0..m - 1 {
            d = d.derivative();
        }
        let dd = d.derivative();
        let mut c = centre;
        for _ in 0..CLUSTER_NEWTON_STEPS {
            let step = d.eval(c) / dd.eval(c);
            if !(step.re.is_finite() && step.im.is_finite()) {
                break;
            }
            c -= step;
            if step.norm() <= 4.0 * f64::EPSILON * c.norm().max(f64::MIN_POSITIVE) {
                break;
            }
        }
        if (c - centre).norm() <= spread + allowed
            && roots::normalized_residual(p.coeffs(), c) <= RESIDUAL_TOL
        {
            return c;
        }
    }
    roots[i]
}

/// Certifies `|p| <= |f|` on `|z| = k` up to `tol * max|f|`, by locating the
/// maximum of `|p| - |f|` on the circle.
pub fn certify_dominated(p: &ComplexPoly, f: &ComplexPoly, k: f64, tol: f64) -> Result<bool> {
    check_radius_tol(k, tol)?;
    let degree = p.degree().max(f.degree());
    let gap = |theta: f64| {
        let z = Complex64::from_polar(k, theta);
        p.eval(z).norm() - f.eval(z).norm()
    };
    let (_, worst) = extremum_on_circle(gap, grid_size(degree), degree, tol, ExtremumKind::Max);
    let scale = max_modulus(f, k, tol)?.value;
    Ok(worst <= tol * scale.max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn angle_close(a: f64, b: f64, tol: f64) -> bool {
        let d = (a - b).rem_euclid(TAU);
        d.min(TAU - d) <= tol
    }

    #[test]
    fn max_examples() {
        let z3 = ComplexPoly::monomial(c(1.0, 0.0), 3);
        let m = max_modulus(&z3, 2.0, DEFAULT_TOL).unwrap();
        assert!((m.value - 8.0).abs() <= 1e-12);
        assert_eq!(m.kind, ExtremumKind::Max);

        let zp1 = ComplexPoly::from_real(&[1.0, 1.0]);
        let m = max_modulus(&zp1, 1.0, DEFAULT_TOL).unwrap();
        assert!((m.value - 2.0).abs() <= 1e-12);
        assert!(angle_close(m.theta, 0.0, 1e-6));

        // |4w + 1| on |w| = 1 peaks at w = 1, i.e. e^{2iθ} = 1
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        let m = max_modulus(&p, 2.0, DEFAULT_TOL).unwrap();
        assert!((m.value - 5.0).abs() <= 1e-9 * 6.0);
        assert!(angle_close(m.theta, 0.0, 1e-5) || angle_close(m.theta, PI, 1e-5));
    }

    #[test]
    fn min_examples() {
        let zp1 = ComplexPoly::from_real(&[1.0, 1.0]);
        let m = min_modulus(&zp1, 1.0, DEFAULT_TOL).unwrap();
        assert!(m.value <= 1e-9);
        assert!(angle_close(m.theta, PI, 1e-8));

        let z2 = ComplexPoly::monomial(c(1.0, 0.0), 2);
        let m = min_modulus(&z2, 0.5, DEFAULT_TOL).unwrap();
        assert!((m.value - 0.25).abs() <= 1e-12);

        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        let m = min_modulus(&p, 2.0, DEFAULT_TOL).unwrap();
        assert!((m.value - 3.0).abs() <= 1e-9 * 4.0);
        assert!(
            angle_close(m.theta, FRAC_PI_2, 1e-5) || angle_close(m.theta, 3.0 * FRAC_PI_2, 1e-5)
        );
    }

    #[test]
    fn rejects_bad_arguments() {
        let p = ComplexPoly::from_real(&[1.0, 1.0]);
        assert!(matches!(
            max_modulus(&p, 1.0, 0.0),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(matches!(
            min_modulus(&p, 1.0, -1.0),
            Err(Error::InvalidTolerance(_))
        ));
        assert!(matches!(
            max_modulus(&p, 0.0, 1e-9),
            Err(Error::InvalidRadius(_))
        ));
    }

    #[test]
    fn extremum_matches_dense_grid() {
        let p = ComplexPoly::new(vec![
            c(0.3, -1.0),
            c(1.2, 0.4),
            c(-0.5, 0.9),
            c(0.1, 0.2),
            c(0.8, -0.6),
        ]);
        let n = 200_000;
        let (mut hi, mut lo) = (0.0f64, f64::INFINITY);
        for i in 0..n {
            let v = p
                .eval(Complex64::from_polar(1.3, TAU * i as f64 / n as f64))
                .norm();
            hi = hi.max(v);
            lo = lo.min(v);
        }
        let m = max_modulus(&p, 1.3, DEFAULT_TOL).unwrap();
        let mm = min_modulus(&p, 1.3, DEFAULT_TOL).unwrap();
        assert!(m.value >= hi - 1e-12 && m.value - hi <= 1e-8 * hi);
        assert!(mm.value <= lo + 1e-12 && lo - mm.value <= 1e-6 * (1.0 + lo));
        assert!((p.eval(m.point()).norm() - m.value).abs() <= 1e-14 * m.value);
    }

    #[test]
    fn disk_predicate_examples() {
        let inside = ComplexPoly::from_roots(c(1.0, 0.0), &[c(0.3, 0.0), c(0.0, -0.5)]).unwrap();
        assert!(all_zeros_in_closed_disk(&inside, 1.0).unwrap());
        assert!(!all_zeros_in_closed_disk(&ComplexPoly::from_real(&[-2.0, 1.0]), 1.0).unwrap());
        let k = 0.8;
        let boundary =
            ComplexPoly::from_roots(c(1.0, 0.0), &[Complex64::from_polar(k, 0.7)]).unwrap();
        assert!(all_zeros_in_closed_disk(&boundary, k).unwrap());

        assert!(no_zeros_in_open_disk(&ComplexPoly::from_real(&[2.0, 1.0]), 1.0).unwrap());
        assert!(!no_zeros_in_open_disk(&ComplexPoly::monomial(c(1.0, 0.0), 2), 0.5).unwrap());
        assert!(no_zeros_in_open_disk(&ComplexPoly::from_real(&[1.0, 1.0]), 1.0).unwrap());
    }

    #[test]
    fn multiple_boundary_roots() {
        for n in 2..=10 {
            for k in [0.3, 1.0, 1.7] {
                let root = Complex64::from_polar(k, 0.3 * n as f64);
                let p = ComplexPoly::from_roots(c(0.8, -1.1), &vec![root; n]).unwrap();
                assert!(all_zeros_in_closed_disk(&p, k).unwrap(), "n = {n}, k = {k}");
                assert!(no_zeros_in_open_disk(&p, k).unwrap(), "n = {n}, k = {k}");
                assert!(!all_zeros_in_closed_disk(&p, 0.99 * k).unwrap());
                assert!(!no_zeros_in_open_disk(&p, 1.01 * k).unwrap());
            }
        }
    }

    #[test]
    fn constants_and_zero_in_predicates() {
        let three = ComplexPoly::from_real(&[3.0]);
        assert!(all_zeros_in_closed_disk(&three, 1.0).unwrap());
        assert!(no_zeros_in_open_disk(&three, 1.0).unwrap());
        assert!(!no_zeros_in_open_disk(&ComplexPoly::zero(), 1.0).unwrap());
    }

    #[test]
    fn domination_certificate() {
        let f = ComplexPoly::from_roots(c(1.0, 0.0), &[c(0.2, 0.1), c(-0.4, 0.3)]).unwrap();
        let half = f.scale(c(0.0, 0.5));
        assert!(certify_dominated(&half, &f, 1.0, 1e-9).unwrap());
        assert!(certify_dominated(&f.scale(c(0.0, 1.0)), &f, 1.0, 1e-9).unwrap());
        assert!(!certify_dominated(&f.scale(c(1.01, 0.0)), &f, 1.0, 1e-9).unwrap());
    }
}
