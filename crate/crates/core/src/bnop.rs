//! The three-term operator family
//! `B[P](z) = λ0 P(z) + λ1 (nz/2) P'(z) + λ2 (nz/2)^2 P''(z) / 2`.
//!
//! An operator is admissible when every zero `u` of
//! `U(z) = λ0 + n λ1 z + n(n-1)/2 λ2 z^2` satisfies `|u| <= |u - n/2|`, i.e.
//! lies in the closed half plane `Re u <= n/4`. Operators can only be built
//! through [`BnOperator::validate`].

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::poly::ComplexPoly;
use crate::{Error, Result};

/// Absolute slack admitted on `|u| - |u - n/2| <= 0`.
pub const VALIDITY_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BnOperator {
    lambda: [Complex64; 3],
    n: usize,
}

impl BnOperator {
    pub fn validate(
        lambda0: Complex64,
        lambda1: Complex64,
        lambda2: Complex64,
        n: usize,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        let lambda = [lambda0, lambda1, lambda2];
        if lambda
            .iter()
            .any(|l| !l.re.is_finite() || !l.im.is_finite())
        {
            return Err(Error::InvalidParams("non-finite lambda".into()));
        }
        let u = u_coeffs(&lambda, n);
        if u.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::DegenerateOperator);
        }
        let half = n as f64 / 2.0;
        for zero in quadratic_zeros(u[2], u[1], u[0]) {
            let margin = zero.norm() - (zero - half).norm();
            if margin > VALIDITY_TOL {
                return Err(Error::InvalidOperator { zero, margin });
            }
        }
        Ok(Self { lambda, n })
    }

    /// `(1, 0, 0)`: the identity on polynomials of degree at most `n`.
    pub fn identity(n: usize) -> Result<Self> {
        Self::validate(
            Complex64::new(1.0, 0.0),
            Complex64::default(),
            Complex64::default(),
            n,
        )
    }

    /// `(0, 2/n, 0)`, which maps `P` to `z P'(z)`.
    pub fn z_derivative(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDegree);
        }
        Self::validate(
            Complex64::default(),
            Complex64::new(2.0 / n as f64, 0.0),
            Complex64::default(),
            n,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lambda(&self) -> [Complex64; 3] {
        self.lambda
    }

    pub fn lambda0(&self) -> Complex64 {
        self.lambda[0]
    }

    /// Zeros of `U(z)` (zero, one or two values).
    pub fn u_zeros(&self) -> Vec<Complex64> {
        let u = u_coeffs(&self.lambda, self.n);
        quadratic_zeros(u[2], u[1], u[0])
    }

    pub fn apply(&self, p: &ComplexPoly) -> Result<ComplexPoly> {
        if p.degree() > self.n {
            return Err(Error::DegreeOverflow {
                degree: p.degree(),
                n: self.n,
            });
        }
        let half_n = self.n as f64 / 2.0;
        let d1 = p.derivative();
        let d2 = d1.derivative();
        // (nz/2) P'  and  (nz/2)^2 P'' / 2
        let first = d1.shift_up(1).scale(Complex64::new(half_n, 0.0));
        let second = d2
            .shift_up(2)
            .scale(Complex64::new(half_n * half_n / 2.0, 0.0));
        let [l0, l1, l2] = self.lambda;
        let partial = ComplexPoly::linear_combine(l0, p, l1, &first);
        Ok(ComplexPoly::linear_combine(
            Complex64::new(1.0, 0.0),
            &partial,
            l2,
            &second,
        ))
    }

    /// The scalar `m_n` with `B[z^n] = m_n z^n`.
    pub fn monomial_image(&self) -> Complex64 {
        let n = self.n as f64;
        let [l0, l1, l2] = self.lambda;
        l0 + l1 * (n * n / 2.0) + l2 * (n * n * n * (n - 1.0) / 8.0)
    }

    /// `|B[z^n]|` evaluated at `z`, i.e. `|m_n| |z|^n`.
    pub fn monomial_image_abs_at(&self, z: Complex64) -> f64 {
        self.monomial_image().norm() * z.norm().powi(self.n as i32)
    }
}

/// Ascending coefficients of `U`.
fn u_coeffs(lambda: &[Complex64; 3], n: usize) -> [Complex64; 3] {
    let n = n as f64;
    [lambda[0], lambda[1] * n, lambda[2] * (n * (n - 1.0) / 2.0)]
}

/// Zeros of `a z^2 + b z + c`, degrading to the linear and constant cases.
///
/// The quadratic branch picks the sign of the square root that avoids
/// cancellation in `-b ± sqrt(disc)`.
pub(crate) fn quadratic_zeros(a: Complex64, b: Complex64, c: Complex64) -> Vec<Complex64> {
    if a.norm() == 0.0 {
        if b.norm() == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let sqrt_disc = (b * b - a * c * 4.0).sqrt();
    let sign = if (b.conj() * sqrt_disc).re >= 0.0 {
        1.0
    } else {
        -1.0
    };
    let q = -(b + sqrt_disc * sign) / 2.0;
    if q.norm() == 0.0 {
        // b = 0 and disc = 0, so c = 0 as well
        return vec![Complex64::default(), Complex64::default()];
    }
    vec![q / a, c / q]
}

#[derive(Serialize, Deserialize)]
struct OperatorWire {
    n: usize,
    lambda: [Complex64; 3],
}

impl Serialize for BnOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OperatorWire {
            n: self.n,
            lambda: self.lambda,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BnOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = OperatorWire::deserialize(deserializer)?;
        let [l0, l1, l2] = wire.lambda;
        BnOperator::validate(l0, l1, l2, wire.n).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn zero() -> Complex64 {
        Complex64::default()
    }

    #[test]
    fn validate_examples() {
        assert!(BnOperator::validate(c(1.0, 0.0), zero(), zero(), 3).is_ok());
        let op = BnOperator::validate(zero(), c(1.0, 0.0), zero(), 2).unwrap();
        assert_eq!(op.u_zeros(), vec![zero()]);

        match BnOperator::validate(c(-1.0, 0.0), c(0.5, 0.0), zero(), 2) {
            Err(Error::InvalidOperator { zero, margin }) => {
                assert!((zero - c(1.0, 0.0)).norm() < 1e-15);
                assert!((margin - 1.0).abs() < 1e-15);
            }
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_degenerate() {
        assert!(matches!(
            BnOperator::validate(zero(), zero(), zero(), 2),
            Err(Error::DegenerateOperator)
        ));
        // n = 1 kills the quadratic term of U
        assert!(matches!(
            BnOperator::validate(zero(), zero(), c(1.0, 0.0), 1),
            Err(Error::DegenerateOperator)
        ));
        assert!(matches!(
            BnOperator::validate(c(1.0, 0.0), zero(), zero(), 0),
            Err(Error::ZeroDegree)
        ));
    }

    #[test]
    fn validate_admits_boundary_zero() {
        // U(z) = lambda0 + n lambda1 z with zero exactly at Re u = n/4
        for n in 1..9 {
            let u = c(n as f64 / 4.0, 0.37);
            // lambda1 = 1, lambda0 = -n u
            let op = BnOperator::validate(-u * n as f64, c(1.0, 0.0), zero(), n);
            assert!(op.is_ok(), "boundary zero rejected for n = {n}");
            let nudged = BnOperator::validate(-(u + 1e-6) * n as f64, c(1.0, 0.0), zero(), n);
            assert!(nudged.is_err());
        }
    }

    #[test]
    fn quadratic_zeros_are_stable() {
        // roots 1e-8 and 1e8 differ by 16 orders of magnitude
        let roots = quadratic_zeros(c(1.0, 0.0), c(-(1e8 + 1e-8), 0.0), c(1.0, 0.0));
        let mut mods: Vec<f64> = roots.iter().map(|r| r.norm()).collect();
        mods.sort_by(f64::total_cmp);
        assert!((mods[0] - 1e-8).abs() <= 1e-22);
        assert!((mods[1] - 1e8).abs() <= 1e-6);
    }

    #[test]
    fn apply_examples() {
        let id = BnOperator::identity(4).unwrap();
        let p = ComplexPoly::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.0, 1.0)]);
        assert_eq!(id.apply(&p).unwrap(), p);

        let z2 = ComplexPoly::monomial(c(1.0, 0.0), 2);
        let op = BnOperator::validate(c(1.0, 0.0), c(1.0, 0.0), zero(), 2).unwrap();
        assert_eq!(
            op.apply(&z2).unwrap(),
            ComplexPoly::monomial(c(3.0, 0.0), 2)
        );

        let op = BnOperator::validate(zero(), zero(), c(1.0, 0.0), 2).unwrap();
        assert_eq!(op.apply(&z2).unwrap(), z2);

        let too_big = ComplexPoly::monomial(c(1.0, 0.0), 3);
        assert!(matches!(
            op.apply(&too_big),
            Err(Error::DegreeOverflow { degree: 3, n: 2 })
        ));
    }

    #[test]
    fn monomial_image_examples() {
        for n in 1..6 {
            assert_eq!(
                BnOperator::identity(n).unwrap().monomial_image(),
                c(1.0, 0.0)
            );
        }
        let op = BnOperator::validate(c(1.0, 0.0), c(1.0, 0.0), zero(), 2).unwrap();
        assert_eq!(op.monomial_image(), c(3.0, 0.0));
        let op = BnOperator::validate(zero(), zero(), c(1.0, 0.0), 2).unwrap();
        assert_eq!(op.monomial_image(), c(1.0, 0.0));
    }

    #[test]
    fn z_derivative_recovers_z_times_derivative() {
        let p = ComplexPoly::new(vec![c(0.5, -1.0), c(2.0, 0.0), c(0.0, 3.0), c(-1.0, 1.0)]);
        let op = BnOperator::z_derivative(3).unwrap();
        let expected = p.derivative().shift_up(1);
        let got = op.apply(&p).unwrap();
        for (a, b) in got.coeffs().iter().zip(expected.coeffs()) {
            assert!((a - b).norm() <= 1e-14 * (1.0 + b.norm()));
        }
        assert_eq!(got.degree(), expected.degree());
    }

    #[test]
    fn json_round_trip_validates() {
        let op = BnOperator::validate(c(1.0, 0.0), c(0.25, -0.5), zero(), 3).unwrap();
        let s = serde_json::to_string(&op).unwrap();
        assert_eq!(s, r#"{"n":3,"lambda":[[1.0,0.0],[0.25,-0.5],[0.0,0.0]]}"#);
        assert_eq!(serde_json::from_str::<BnOperator>(&s).unwrap(), op);
        let bad = r#"{"n":2,"lambda":[[-1,0],[0.5,0],[0,0]]}"#;
        assert!(serde_json::from_str::<BnOperator>(bad).is_err());
    }

    fn complex() -> impl Strategy<Value = Complex64> {
        (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn valid_operator() -> impl Strategy<Value = BnOperator> {
        (complex(), complex(), complex(), 1usize..9)
            .prop_filter_map("invalid operator", |(a, b, cc, n)| {
                BnOperator::validate(a, b, cc, n).ok()
            })
    }

    proptest! {
        #[test]
        fn apply_is_linear(
            op in valid_operator(),
            pc in prop::collection::vec(complex(), 9),
            qc in prop::collection::vec(complex(), 9),
            a in complex(),
            b in complex(),
        ) {
            let n = op.n();
            let p = ComplexPoly::new(pc[..=n].to_vec());
            let q = ComplexPoly::new(qc[..=n].to_vec());
            let lhs = op.apply(&ComplexPoly::linear_combine(a, &p, b, &q)).unwrap();
            let rhs = ComplexPoly::linear_combine(a, &op.apply(&p).unwrap(), b, &op.apply(&q).unwrap());
            let scale = op.monomial_image().norm() + op.lambda().iter().map(|l| l.norm()).sum::<f64>() * (n * n * n) as f64;
            for j in 0..=n {
                prop_assert!((lhs.coeff(j) - rhs.coeff(j)).norm() <= 1e-12 * scale.max(1.0) * 8.0);
            }
        }

        #[test]
        fn apply_monomial_matches_image(op in valid_operator()) {
            let n = op.n();
            let image = op.apply(&ComplexPoly::monomial(Complex64::new(1.0, 0.0), n)).unwrap();
            let m = op.monomial_image();
            prop_assert!((image.coeff(n) - m).norm() <= 1e-12 * m.norm().max(1.0));
            for j in 0..n {
                prop_assert_eq!(image.coeff(j), Complex64::default());
            }
        }

        #[test]
        fn validated_zeros_lie_in_half_plane(op in valid_operator()) {
            let n = op.n() as f64;
            for u in op.u_zeros() {
                prop_assert!(u.re <= n / 4.0 + 1e-9);
            }
        }
    }
}
