//! Mass geometries, their Fourier-space mass densities (form factors) and
//! nucleon counts.
//!
//! # Axis conventions
//!
//! Every anisotropic geometry is referred to a fixed body frame in which
//! the **x axis is simultaneously the motion axis, the symmetry axis and
//! the pair-separation axis**:
//!
//! * a cylinder's symmetry axis lies along x;
//! * a cuboid's first side (`sides_m[0]`) lies along x;
//! * the separation of a [`GeometryPair`] points along +x.
//!
//! Configurations that would need any other orientation are rejected at
//! validation time rather than silently reinterpreted.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::constants::{HBAR, M0};
use crate::error::{DcslError, Result};

fn default_axis() -> [f64; 3] {
    [1.0, 0.0, 0.0]
}

/// A rigid homogeneous body (or an idealised point mass).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum MassGeometry {
    /// Point mass; the form factor is the bare mass.
    Point {
        /// Mass, kg.
        mass_kg: f64,
    },
    /// Homogeneous ball.
    Sphere {
        /// Radius, m.
        radius_m: f64,
        /// Mass density, kg/m³.
        density_kg_m3: f64,
    },
    /// Homogeneous right circular cylinder with its axis along x.
    Cylinder {
        /// Cross-section radius, m.
        radius_m: f64,
        /// Length along the symmetry axis, m.
        length_m: f64,
        /// Mass density, kg/m³.
        density_kg_m3: f64,
        /// Orientation of the symmetry axis; only the +x unit vector is
        /// supported.
        #[serde(default = "default_axis")]
        axis_unit: [f64; 3],
    },
    /// Homogeneous rectangular cuboid with `sides_m[0]` along x.
    Cuboid {
        /// Edge lengths along (x, y, z), m.
        sides_m: [f64; 3],
        /// Mass density, kg/m³.
        density_kg_m3: f64,
        /// Orientation of the first edge; only the +x unit vector is
        /// supported.
        #[serde(default = "default_axis")]
        axis_unit: [f64; 3],
    },
}

fn check_positive(value: f64, what: &str) -> Result<()> {
    if !value.is_finite() || value <= 0.0 {
        return Err(DcslError::InvalidConfig(format!(
            "{what} must be finite and > 0, got {value:e}"
        )));
    }
    Ok(())
}

fn check_axis(axis: [f64; 3]) -> Result<()> {
    let ok = (axis[0] - 1.0).abs() < 1e-12 && axis[1].abs() < 1e-12 && axis[2].abs() < 1e-12;
    if !ok {
        return Err(DcslError::InvalidConfig(format!(
            "only the +x orientation [1, 0, 0] is supported for body axes, \
             got [{:e}, {:e}, {:e}]",
            axis[0], axis[1], axis[2]
        )));
    }
    Ok(())
}

impl MassGeometry {
    /// Validates all dimensions and the orientation convention.
    pub fn validate(&self) -> Result<()> {
        match self {
            MassGeometry::Point { mass_kg } => check_positive(*mass_kg, "point mass"),
            MassGeometry::Sphere { radius_m, density_kg_m3 } => {
                check_positive(*radius_m, "sphere radius")?;
                check_positive(*density_kg_m3, "sphere density")
            }
            MassGeometry::Cylinder { radius_m, length_m, density_kg_m3, axis_unit } => {
                check_positive(*radius_m, "cylinder radius")?;
                check_positive(*length_m, "cylinder length")?;
                check_positive(*density_kg_m3, "cylinder density")?;
                check_axis(*axis_unit)
            }
            MassGeometry::Cuboid { sides_m, density_kg_m3, axis_unit } => {
                for (i, side) in sides_m.iter().enumerate() {
                    check_positive(*side, &format!("cuboid side {i}"))?;
                }
                check_positive(*density_kg_m3, "cuboid density")?;
                check_axis(*axis_unit)
            }
        }
    }

    /// Body volume, m³ (zero for a point mass).
    pub fn volume(&self) -> f64 {
        match self {
            MassGeometry::Point { .. } => 0.0,
            MassGeometry::Sphere { radius_m, .. } => {
                4.0 / 3.0 * std::f64::consts::PI * radius_m.powi(3)
            }
            MassGeometry::Cylinder { radius_m, length_m, .. } => {
                std::f64::consts::PI * radius_m * radius_m * length_m
            }
            MassGeometry::Cuboid { sides_m, .. } => sides_m[0] * sides_m[1] * sides_m[2],
        }
    }

    /// Total mass, kg.
    pub fn mass(&self) -> f64 {
        match self {
            MassGeometry::Point { mass_kg } => *mass_kg,
            MassGeometry::Sphere { density_kg_m3, .. }
            | MassGeometry::Cylinder { density_kg_m3, .. }
            | MassGeometry::Cuboid { density_kg_m3, .. } => density_kg_m3 * self.volume(),
        }
    }

    /// Real-valued nucleon count `mass / m0` (no rounding is applied).
    pub fn nucleon_count(&self) -> f64 {
        self.mass() / M0
    }

    /// Fourier transform of the mass density at momentum `q` (SI, kg·m/s):
    /// `μ̃(q) = ∫ d³x ρ(x) e^{i q·x / ħ}`, units kg.
    ///
    /// All supported bodies are centrosymmetric, so the result is real and
    /// is returned as a complex number with zero imaginary part for
    /// interface uniformity; `|μ̃(0)| = M`.
    pub fn form_factor(&self, q: [f64; 3]) -> Complex64 {
        let mass = self.mass();
        let profile = match self {
            MassGeometry::Point { .. } => 1.0,
            MassGeometry::Sphere { radius_m, .. } => {
                let qn = (q[0] * q[0] + q[1] * q[1] + q[2] * q[2]).sqrt();
                crate::kernels::sphere_ff_norm(qn * radius_m / HBAR)
            }
            MassGeometry::Cylinder { radius_m, length_m, .. } => {
                let q_perp = (q[1] * q[1] + q[2] * q[2]).sqrt();
                crate::kernels::jinc(q_perp * radius_m / HBAR)
                    * crate::kernels::sinc(q[0] * length_m / (2.0 * HBAR))
            }
            MassGeometry::Cuboid { sides_m, .. } => {
                crate::kernels::sinc(q[0] * sides_m[0] / (2.0 * HBAR))
                    * crate::kernels::sinc(q[1] * sides_m[1] / (2.0 * HBAR))
                    * crate::kernels::sinc(q[2] * sides_m[2] / (2.0 * HBAR))
            }
        };
        Complex64::new(mass * profile, 0.0)
    }

    /// Squared normalised form factor `|μ̃(ħ u / s)|² / M²` evaluated at
    /// the scaled momentum `u` (dimensionless), for a scaling length `s`.
    ///
    /// This is the quantity that appears inside every scaled coefficient
    /// integral; it avoids the round trip through SI momenta.
    pub(crate) fn scaled_profile_sq(&self, u: [f64; 3], s: f64) -> f64 {
        let profile = match self {
            MassGeometry::Point { .. } => 1.0,
            MassGeometry::Sphere { radius_m, .. } => {
                let un = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
                crate::kernels::sphere_ff_norm(un * radius_m / s)
            }
            MassGeometry::Cylinder { radius_m, length_m, .. } => {
                let u_perp = (u[1] * u[1] + u[2] * u[2]).sqrt();
                crate::kernels::jinc(u_perp * radius_m / s)
                    * crate::kernels::sinc(u[0] * length_m / (2.0 * s))
            }
            MassGeometry::Cuboid { sides_m, .. } => {
                crate::kernels::sinc(u[0] * sides_m[0] / (2.0 * s))
                    * crate::kernels::sinc(u[1] * sides_m[1] / (2.0 * s))
                    * crate::kernels::sinc(u[2] * sides_m[2] / (2.0 * s))
            }
        };
        profile * profile
    }
}

/// Two identical bodies whose relative coordinate along +x is monitored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryPair {
    /// The common body shape.
    pub base: MassGeometry,
    /// Centre-to-centre separation along +x, m. Must be ≥ 0.
    pub r12_m: f64,
}

impl GeometryPair {
    /// Builds a validated pair.
    pub fn new(base: MassGeometry, r12_m: f64) -> Result<Self> {
        base.validate()?;
        if !r12_m.is_finite() || r12_m < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "pair separation r12 must be finite and >= 0, got {r12_m:e}"
            )));
        }
        Ok(GeometryPair { base, r12_m })
    }

    /// Validates the stored fields (for pairs built by deserialisation).
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if !self.r12_m.is_finite() || self.r12_m < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "pair separation r12 must be finite and >= 0, got {:e}",
                self.r12_m
            )));
        }
        Ok(())
    }

    /// Form factors of the two bodies at momentum `q`: the first body sits
    /// at the origin, the second at `+R12 x̂`, so its form factor carries
    /// the translation phase `e^{-i q_x R12 / ħ}`.
    pub fn pair_form_factor(&self, q: [f64; 3]) -> (Complex64, Complex64) {
        let first = self.base.form_factor(q);
        let phase = Complex64::from_polar(1.0, -q[0] * self.r12_m / HBAR);
        (first, first * phase)
    }
}
