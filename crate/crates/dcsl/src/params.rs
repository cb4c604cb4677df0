//! Collapse-model parameters and the closed-form scalars derived from them.
//!
//! The dissipative CSL model is parametrised by three quantities:
//!
//! * `lambda` — the collapse rate per nucleon, 1/s;
//! * `r_c`   — the spatial correlation length of the collapse noise, m;
//! * `t_csl` — the effective temperature of the collapse noise, K.
//!
//! The non-dissipative (standard CSL) model is the `t_csl → ∞` limit. That
//! limit is represented exactly by [`NoiseTemperature::Infinite`] rather
//! than by a large float, so the limiting expressions are evaluated in
//! closed form with no rounding residue.

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

use crate::constants::{HBAR, K_B, M0};
use crate::error::{DcslError, Result};

/// Temperature of the collapse noise field: finite (Kelvin) or infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoiseTemperature {
    /// Finite noise temperature in Kelvin (dissipative model).
    Finite(f64),
    /// Infinite noise temperature (standard, non-dissipative limit).
    Infinite,
}

impl NoiseTemperature {
    /// True for the non-dissipative limit.
    pub fn is_infinite(&self) -> bool {
        matches!(self, NoiseTemperature::Infinite)
    }

    /// Finite value in Kelvin, if any.
    pub fn kelvin(&self) -> Option<f64> {
        match self {
            NoiseTemperature::Finite(t) => Some(*t),
            NoiseTemperature::Infinite => None,
        }
    }
}

impl fmt::Display for NoiseTemperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoiseTemperature::Finite(t) => write!(f, "{t:e}"),
            NoiseTemperature::Infinite => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for NoiseTemperature {
    type Err = DcslError;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed.eq_ignore_ascii_case("inf")
            || trimmed.eq_ignore_ascii_case("infinite")
            || trimmed.eq_ignore_ascii_case("infinity")
        {
            return Ok(NoiseTemperature::Infinite);
        }
        let value: f64 = trimmed.parse().map_err(|_| {
            DcslError::InvalidConfig(format!(
                "cannot parse noise temperature {trimmed:?}: expected a \
                 positive number of Kelvin or \"inf\""
            ))
        })?;
        Ok(NoiseTemperature::Finite(value))
    }
}

impl Serialize for NoiseTemperature {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NoiseTemperature::Finite(t) => serializer.serialize_f64(*t),
            NoiseTemperature::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for NoiseTemperature {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct TempVisitor;

        impl Visitor<'_> for TempVisitor {
            type Value = NoiseTemperature;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a number of Kelvin or the string \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Self::Value, E> {
                Ok(NoiseTemperature::Finite(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Self::Value, E> {
                Ok(NoiseTemperature::Finite(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Self::Value, E> {
                Ok(NoiseTemperature::Finite(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Self::Value, E> {
                v.parse().map_err(|e| E::custom(format!("{e}")))
            }
        }

        deserializer.deserialize_any(TempVisitor)
    }
}

/// The parameter triple of the dissipative collapse model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollapseParams {
    /// Collapse rate per nucleon, 1/s. Must be ≥ 0 and finite.
    pub lambda: f64,
    /// Correlation length of the collapse noise, m. Must be > 0 and finite.
    pub r_c: f64,
    /// Noise temperature (finite Kelvin or infinite).
    pub t_csl: NoiseTemperature,
}

impl CollapseParams {
    /// Builds a validated parameter set.
    pub fn new(lambda: f64, r_c: f64, t_csl: NoiseTemperature) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "collapse rate lambda must be finite and >= 0, got {lambda:e}"
            )));
        }
        if !r_c.is_finite() || r_c <= 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "correlation length r_c must be finite and > 0, got {r_c:e}"
            )));
        }
        if let NoiseTemperature::Finite(t) = t_csl {
            if !t.is_finite() || t <= 0.0 {
                return Err(DcslError::InvalidConfig(format!(
                    "noise temperature must be finite and > 0 K (or \
                     infinite), got {t:e}"
                )));
            }
        }
        Ok(CollapseParams { lambda, r_c, t_csl })
    }

    /// Convenience constructor for the non-dissipative (infinite
    /// temperature) limit.
    pub fn csl(lambda: f64, r_c: f64) -> Result<Self> {
        Self::new(lambda, r_c, NoiseTemperature::Infinite)
    }

    /// Dimensionless dissipation parameter
    /// `chi = ħ² / (8 m0 k_B T_csl r_c²)`.
    ///
    /// Evaluates to exactly 0 in the infinite-temperature limit.
    pub fn chi(&self) -> f64 {
        match self.t_csl {
            NoiseTemperature::Infinite => 0.0,
            NoiseTemperature::Finite(t) => {
                HBAR * HBAR / (8.0 * M0 * K_B * t * self.r_c * self.r_c)
            }
        }
    }

    /// Rescaled correlation length `s = r_c (1 + chi)`, m.
    ///
    /// This is the length that actually controls the Gaussian smearing of
    /// every collapse coefficient.
    pub fn scaled_length(&self) -> f64 {
        self.r_c * (1.0 + self.chi())
    }

    /// Mass-free dissipative momentum coefficient
    /// `varkappa_m = ħ (1 + chi) / (4 k_B T_csl)`, seconds.
    ///
    /// The per-mass coefficient is `varkappa = varkappa_m / m`. It vanishes
    /// identically in the non-dissipative limit.
    pub fn varkappa_m(&self) -> f64 {
        match self.t_csl {
            NoiseTemperature::Infinite => 0.0,
            NoiseTemperature::Finite(t) => HBAR * (1.0 + self.chi()) / (4.0 * K_B * t),
        }
    }

    /// Geometry-free damping factor `gamma' = 4 r_c² m0 chi (1 + chi) / m`
    /// for a system of mass `m` (kg); units m².
    ///
    /// Multiplying it by the diffusion coefficient `eta` of the system
    /// yields the collapse-induced velocity damping rate
    /// `gamma_csl = eta · gamma'`.
    pub fn gamma_prime(&self, m: f64) -> f64 {
        let chi = self.chi();
        4.0 * self.r_c * self.r_c * M0 * chi * (1.0 + chi) / m
    }

    /// Squared noise-coupling strength
    /// `nu² = lambda r_c³ (4π)^{3/2} / m0²`, m³ s⁻¹ kg⁻².
    pub fn nu_squared(&self) -> f64 {
        const FOUR_PI_POW_3_2: f64 = 44.546_623_974_653_66; // (4π)^{3/2}
        self.lambda * self.r_c.powi(3) * FOUR_PI_POW_3_2 / (M0 * M0)
    }

    /// Master prefactor of the scaled coefficient integrals,
    /// `c0 = nu² / (8 π³ s⁵)`, with `s` the rescaled correlation length.
    pub(crate) fn master_prefactor(&self) -> f64 {
        let s = self.scaled_length();
        self.nu_squared() / (8.0 * std::f64::consts::PI.powi(3) * s.powi(5))
    }
}
