//! Dense complex polynomials in ascending-degree storage.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// Trailing coefficients with modulus at or below this fraction of the largest
/// coefficient modulus are dropped.
pub const TRIM_THRESHOLD: f64 = 1e-14;

/// A polynomial `a_0 + a_1 z + ... + a_n z^n` with complex coefficients.
///
/// The leading coefficient is nonzero except for the zero polynomial, which is
/// stored as the single coefficient `[0]` with degree 0.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

impl ComplexPoly {
    /// Builds a polynomial from ascending coefficients, trimming negligible
    /// trailing terms.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let mut coeffs = coeffs;
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cutoff = TRIM_THRESHOLD * scale;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() <= cutoff) {
            coeffs.pop();
        }
        if coeffs.is_empty() || scale == 0.0 {
            coeffs = vec![Complex64::new(0.0, 0.0)];
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = c;
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero beyond the degree.
    pub fn coeff(&self, j: usize) -> Complex64 {
        self.coeffs.get(j).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() == 0.0
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * z + a)
    }

    pub fn derivative(&self) -> Self {
        if self.degree() == 0 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, &a)| a * j as f64)
                .collect(),
        )
    }

    /// `z^n * conj(P(1 / conj(z)))` in the space of polynomials of degree at
    /// most `n`: coefficient `j` of the result is `conj(a_{n-j})`.
    pub fn conj_reciprocal(&self, n: usize) -> Result<Self> {
        if n < self.degree() {
            return Err(Error::DimensionMismatch {
                ambient: n,
                degree: self.degree(),
            });
        }
        Ok(Self::new(
            (0..=n).map(|j| self.coeff(n - j).conj()).collect(),
        ))
    }

    /// `P(c z)`: coefficient `j` is multiplied by `c^j`.
    pub fn scale_compose(&self, c: Complex64) -> Self {
        let mut power = Complex64::new(1.0, 0.0);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for &a in &self.coeffs {
            out.push(a * power);
            power *= c;
        }
        Self::new(out)
    }

    /// `leading * prod (z - root)`.
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Result<Self> {
        if leading.norm() == 0.0 {
            return Err(Error::ZeroLeading);
        }
        let mut coeffs = vec![leading];
        for &root in roots {
            // multiply by (z - root)
            coeffs.push(Complex64::new(0.0, 0.0));
            for j in (0..coeffs.len()).rev() {
                let lower = if j > 0 {
                    coeffs[j - 1]
                } else {
                    Complex64::new(0.0, 0.0)
                };
                coeffs[j] = lower - root * coeffs[j];
            }
        }
        Ok(Self::new(coeffs))
    }

    /// `a p + b q`, trimmed.
    pub fn linear_combine(a: Complex64, p: &Self, b: Complex64, q: &Self) -> Self {
        let len = p.coeffs.len().max(q.coeffs.len());
        Self::new((0..len).map(|j| a * p.coeff(j) + b * q.coeff(j)).collect())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiplication by `z^shift`.
    pub fn shift_up(&self, shift: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); shift];
        coeffs.extend_from_slice(&self.coeffs);
        Self::new(coeffs)
    }
}

impl Default for ComplexPoly {
    fn default() -> Self {
        Self::zero()
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    n: usize,
    coeffs: Vec<Complex64>,
}

impl Serialize for ComplexPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            n: self.degree(),
            coeffs: self.coeffs.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PolyWire::deserialize(deserializer)?;
        if wire.coeffs.is_empty() {
            return Err(serde::de::Error::custom(
                "polynomial needs at least one coefficient",
            ));
        }
        if wire.coeffs.len() != wire.n + 1 {
            return Err(serde::de::Error::custom(format!(
                "polynomial declares n = {} but carries {} coefficients",
                wire.n,
                wire.coeffs.len()
            )));
        }
        if wire
            .coeffs
            .iter()
            .any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(serde::de::Error::custom("non-finite coefficient"));
        }
        Ok(ComplexPoly::new(wire.coeffs))
    }
}
