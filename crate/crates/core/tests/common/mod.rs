#![allow(dead_code)]

use std::f64::consts::TAU;

use bnineq::{ComplexPoly, C64};
use nalgebra::{DMatrix, Schur};
use rayon::prelude::*;

/// Roots from the eigenvalues of the companion matrix (complex Schur form).
pub fn companion_roots(p: &ComplexPoly) -> Vec<C64> {
    let n = p.degree();
    assert!(n >= 1);
    let lead = p.leading();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p.coeff(i) / lead;
    }
    let (_, t) = Schur::new(m).unpack();
    (0..n).map(|i| t[(i, i)]).collect()
}

/// `(min, max)` of `f` over `points` equally spaced angles.
pub fn dense_extrema<F: Fn(f64) -> f64 + Sync>(f: F, points: usize) -> (f64, f64) {
    (0..points)
        .into_par_iter()
        .map(|i| f(TAU * i as f64 / points as f64))
        .fold(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |(lo, hi), v| (lo.min(v), hi.max(v)),
        )
        .reduce(
            || (f64::INFINITY, f64::NEG_INFINITY),
            |a, b| (a.0.min(b.0), a.1.max(b.1)),
        )
}

pub fn modulus_on_circle(p: &ComplexPoly, k: f64) -> impl Fn(f64) -> f64 + Sync + '_ {
    move |theta| p.eval(C64::from_polar(k, theta)).norm()
}

/// Direct evaluation of `B[P]` from its definition, using finite sums over
/// the coefficients instead of the library's operator.
pub fn apply_operator_direct(lambda: [C64; 3], n: usize, p: &ComplexPoly, z: C64) -> C64 {
    let half_n = n as f64 / 2.0;
    let mut value = C64::default();
    let mut d1 = C64::default();
    let mut d2 = C64::default();
    for (j, &a) in p.coeffs().iter().enumerate() {
        value += a * z.powu(j as u32);
        if j >= 1 {
            d1 += a * j as f64 * z.powu(j as u32 - 1);
        }
        if j >= 2 {
            d2 += a * (j * (j - 1)) as f64 * z.powu(j as u32 - 2);
        }
    }
    lambda[0] * value + lambda[1] * (half_n * z) * d1 + lambda[2] * (half_n * z).powu(2) * d2 / 2.0
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
