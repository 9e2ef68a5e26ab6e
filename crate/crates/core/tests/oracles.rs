//! Library routines against independent oracles: companion-matrix
//! eigenvalues for roots, direct summation for the operator, dense grids
//! for circle extrema.

mod common;

use bnineq::circle::{self, find_roots};
use bnineq::harness::gen;
use bnineq::{BnOperator, ComplexPoly, C64};
use common::{apply_operator_direct, c, companion_roots, dense_extrema, modulus_on_circle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matched_distance(found: &[C64], expected: &[C64]) -> f64 {
    let mut pool = found.to_vec();
    let mut worst = 0.0f64;
    for &e in expected {
        let (idx, d) = pool
            .iter()
            .enumerate()
            .map(|(i, f)| (i, (f - e).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        worst = worst.max(d);
        pool.swap_remove(idx);
    }
    worst
}

#[test]
fn aberth_matches_companion_eigenvalues() {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for _ in 0..300 {
        let n = rng.gen_range(1..=12);
        let p = gen::poly_generic(&mut rng, n);
        let ours = find_roots(&p).unwrap();
        let oracle = companion_roots(&p);
        let scale = oracle.iter().map(|z| z.norm()).fold(1.0, f64::max);
        assert!(matched_distance(&ours, &oracle) <= 1e-7 * scale, "{p:?}");
    }
}

#[test]
fn operator_matches_direct_summation() {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    for _ in 0..300 {
        let n = rng.gen_range(1..=9);
        let op = gen::operator(&mut rng, n).unwrap();
        let d = rng.gen_range(0..=n);
        let p = gen::poly_generic(&mut rng, d);
        let image = op.apply(&p).unwrap();
        for _ in 0..5 {
            let z = C64::from_polar(
                rng.gen_range(0.1..2.5),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let direct = apply_operator_direct(op.lambda(), n, &p, z);
            assert!((image.eval(z) - direct).norm() <= 1e-11 * (1.0 + direct.norm()));
        }
    }
}

#[test]
fn monomial_image_matches_direct_summation() {
    for n in 1..10 {
        for lambda in [
            [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            [c(0.3, 0.1), c(-0.2, 0.4), c(0.05, 0.0)],
        ] {
            let Ok(op) = BnOperator::validate(lambda[0], lambda[1], lambda[2], n) else {
                continue;
            };
            let zn = ComplexPoly::monomial(c(1.0, 0.0), n);
            let direct = apply_operator_direct(lambda, n, &zn, c(1.0, 0.0));
            assert!((op.monomial_image() - direct).norm() <= 1e-12 * (1.0 + direct.norm()));
        }
    }
}

#[test]
fn extrema_never_fall_short_of_a_dense_grid() {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for i in 0..40 {
        let n = rng.gen_range(1..=16);
        let p = gen::poly_generic(&mut rng, n);
        let k = [0.5, 1.0, 2.0, 0.8][i % 4];
        let (lo, hi) = dense_extrema(modulus_on_circle(&p, k), 200_000);
        let max = circle::max_modulus(&p, k, 1e-9).unwrap();
        let min = circle::min_modulus(&p, k, 1e-9).unwrap();
        assert!(max.value >= hi * (1.0 - 1e-9));
        assert!(min.value <= lo * (1.0 + 1e-9) + 1e-300);
    }
}

#[test]
fn disk_predicates_agree_with_companion_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    for _ in 0..300 {
        let n = rng.gen_range(1..=10);
        let p = gen::poly_generic(&mut rng, n);
        let k = rng.gen_range(0.3..2.0);
        let moduli: Vec<f64> = companion_roots(&p).iter().map(|z| z.norm()).collect();
        // skip draws too close to the circle for either method to decide
        if moduli.iter().any(|m| (m - k).abs() < 1e-6 * k) {
            continue;
        }
        assert_eq!(
            circle::all_zeros_in_closed_disk(&p, k).unwrap(),
            moduli.iter().all(|&m| m <= k)
        );
        assert_eq!(
            circle::no_zeros_in_open_disk(&p, k).unwrap(),
            moduli.iter().all(|&m| m >= k)
        );
    }
}
