use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize};

use crate::{Error, Result};

/// Minimum gap enforced for `R > r`.
pub const RADIUS_GAP: f64 = 1e-9;

/// Slop on `|α| <= 1`, `|β| <= 1` and `|z| >= 1`.
pub const UNIT_SLOP: f64 = 1e-12;

/// Parameters of one inequality instance: `R > r >= k > 0`, `|α|, |β| <= 1`
/// and evaluation points with `|z| >= 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseParams {
    k: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    alpha: Complex64,
    beta: Complex64,
    zs: Vec<Complex64>,
}

impl CaseParams {
    pub fn new(
        k: f64,
        r: f64,
        big_r: f64,
        alpha: Complex64,
        beta: Complex64,
        zs: Vec<Complex64>,
    ) -> Result<Self> {
        let finite = |x: f64| x.is_finite();
        if ![k, r, big_r, alpha.re, alpha.im, beta.re, beta.im]
            .into_iter()
            .all(finite)
        {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if k <= 0.0 {
            return Err(Error::InvalidParams(format!("k must be positive, got {k}")));
        }
        if r < k {
            return Err(Error::InvalidParams(format!(
                "need r >= k, got r = {r}, k = {k}"
            )));
        }
        if big_r < r + RADIUS_GAP {
            return Err(Error::InvalidParams(format!(
                "need R > r (by at least {RADIUS_GAP:e}), got R = {big_r}, r = {r}"
            )));
        }
        if alpha.norm() > 1.0 + UNIT_SLOP {
            return Err(Error::InvalidParams(format!(
                "|alpha| = {} exceeds 1",
                alpha.norm()
            )));
        }
        if beta.norm() > 1.0 + UNIT_SLOP {
            return Err(Error::InvalidParams(format!(
                "|beta| = {} exceeds 1",
                beta.norm()
            )));
        }
        let zs = normalize_points(zs)?;
        Ok(Self {
            k,
            r,
            big_r,
            alpha,
            beta,
            zs,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    pub fn zs(&self) -> &[Complex64] {
        &self.zs
    }

    pub fn with_zs(&self, zs: Vec<Complex64>) -> Result<Self> {
        Ok(Self {
            zs: normalize_points(zs)?,
            ..self.clone()
        })
    }

    /// `((R+k)/(k+r))^n`.
    pub fn growth_factor(&self, n: usize) -> f64 {
        ((self.big_r + self.k) / (self.k + self.r)).powi(n as i32)
    }

    pub fn phi_k(&self, n: usize) -> Complex64 {
        phi_k(self, n)
    }

    pub fn echo(&self, n: usize) -> ParamsEcho {
        ParamsEcho {
            n,
            k: self.k,
            r: self.r,
            big_r: self.big_r,
            alpha: self.alpha,
            beta: self.beta,
        }
    }
}

/// `Φ_k(R, r, α, β) = β{((R+k)/(k+r))^n − |α|} − α`.
pub fn phi_k(params: &CaseParams, n: usize) -> Complex64 {
    params.beta * (params.growth_factor(n) - params.alpha.norm()) - params.alpha
}

/// Points inside the unit circle by at most `UNIT_SLOP` are projected onto
/// it; anything further inside is rejected.
fn normalize_points(zs: Vec<Complex64>) -> Result<Vec<Complex64>> {
    if zs.is_empty() {
        return Err(Error::InvalidParams(
            "need at least one evaluation point".into(),
        ));
    }
    zs.into_iter()
        .map(|z| {
            let m = z.norm();
            if !m.is_finite() || m < 1.0 - UNIT_SLOP {
                Err(Error::InvalidParams(format!(
                    "evaluation point {z} has |z| < 1"
                )))
            } else if m < 1.0 {
                Ok(z / m)
            } else {
                Ok(z)
            }
        })
        .collect()
}

#[derive(Deserialize)]
struct ParamsWire {
    k: f64,
    r: f64,
    #[serde(rename = "R")]
    big_r: f64,
    #[serde(default)]
    alpha: Complex64,
    #[serde(default)]
    beta: Complex64,
    zs: Vec<Complex64>,
}

impl<'de> Deserialize<'de> for CaseParams {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let w = ParamsWire::deserialize(deserializer)?;
        CaseParams::new(w.k, w.r, w.big_r, w.alpha, w.beta, w.zs).map_err(serde::de::Error::custom)
    }
}

/// Parameter echo attached to every result.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub n: usize,
    pub k: f64,
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
}
