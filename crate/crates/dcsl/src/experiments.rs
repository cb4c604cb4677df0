//! Experiment descriptions (JSON), predicted observables, model-validity
//! checks, and inversion of measured noise floors into collapse-rate
//! exclusion bounds.
//!
//! An experiment couples a mass geometry to a mechanical readout mode and
//! quotes a single datum:
//!
//! * `thermal_cantilever` — a composite (or single) body on a cantilever;
//!   the datum is the largest temperature-shift magnitude `delta_T_max_K`
//!   compatible with the measured mode temperature (heating and
//!   collapse-induced cooling are both excluded by thermometry).
//! * `force_noise_pair` — two identical separated bodies read out in the
//!   relative coordinate; the datum is a measured force amplitude spectral
//!   density `S_F_N_sqrtHz` (one-sided, N/√Hz) at `f_meas_Hz`.
//!
//! The magnitude of the predicted observable grows from zero with the
//! collapse rate `lambda` at fixed `(r_C, T_noise)`, so the measured floor
//! caps `lambda`; [`Experiment::lambda_bound`] inverts the prediction with
//! a bracketing scan plus bisection.

use std::fmt;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::{eta, CollapseCoefficients, PairCoefficients};
use crate::constants::{HBAR, K_B, M0};
use crate::error::{DcslError, Result};
use crate::geometry::{GeometryPair, MassGeometry};
use crate::params::{CollapseParams, NoiseTemperature};
use crate::spectra::{csl_force_psd, temp_shift, MechanicalConfig};

/// Smallest collapse rate probed by the exclusion scan, 1/s.
pub const LAMBDA_MIN: f64 = 1e-20;
/// Largest collapse rate probed by the exclusion scan, 1/s.
pub const LAMBDA_MAX: f64 = 1e4;
/// Coarse-scan resolution, points per decade of `lambda`.
const SCAN_PER_DECADE: usize = 60;

/// The class of measurement an experiment reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Mode-temperature monitoring of a levitated/suspended resonator.
    ThermalCantilever,
    /// Differential force-noise floor of two separated test masses.
    ForceNoisePair,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExperimentKind::ThermalCantilever => write!(f, "thermal_cantilever"),
            ExperimentKind::ForceNoisePair => write!(f, "force_noise_pair"),
        }
    }
}

/// Geometry block of an experiment description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "arrangement", rename_all = "snake_case")]
pub enum GeometrySpec {
    /// One rigid body.
    Single {
        /// The body.
        body: MassGeometry,
    },
    /// Several rigidly co-moving bodies (collapse rates add incoherently).
    Composite {
        /// The bodies, in declaration order.
        bodies: Vec<MassGeometry>,
    },
    /// Two identical bodies separated along the motion axis.
    Pair {
        /// One body of the pair.
        body: MassGeometry,
        /// Centre-to-centre separation, m.
        r12_m: f64,
    },
}

/// Mechanical-mode block. Exactly one field of each alternative pair must
/// be present: mass (`m_kg` | `k_stiff_N_m`), frequency
/// (`omega0_rad_s` | `f0_Hz`) and damping (`gamma_m_1_s` | `Q`).
/// For `pair` geometries the mass block may be omitted entirely, in which
/// case the body mass is used.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct MechSpec {
    /// Effective mode mass, kg.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_kg: Option<f64>,
    /// Mode stiffness, N/m (mass follows as `k/omega0²`).
    #[serde(rename = "k_stiff_N_m", skip_serializing_if = "Option::is_none")]
    pub k_stiff_n_m: Option<f64>,
    /// Angular resonance frequency, rad/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega0_rad_s: Option<f64>,
    /// Resonance frequency, Hz.
    #[serde(rename = "f0_Hz", skip_serializing_if = "Option::is_none")]
    pub f0_hz: Option<f64>,
    /// Mechanical damping rate, 1/s.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_m_1_s: Option<f64>,
    /// Quality factor (damping follows as `omega0/Q`).
    #[serde(rename = "Q", skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    /// Environment temperature, K.
    #[serde(rename = "T_env_K")]
    pub t_env_k: f64,
}

/// Datum block: the quoted experimental limit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct DatumSpec {
    /// Largest compatible magnitude of the mode-temperature shift, K
    /// (cantilever kind). Thermometry excludes both signs: a collapse
    /// model that cools the mode below the bath is ruled out just as a
    /// heating one is.
    #[serde(rename = "delta_T_max_K", skip_serializing_if = "Option::is_none")]
    pub delta_t_max_k: Option<f64>,
    /// Measured one-sided force amplitude spectral density, N/√Hz (pair kind).
    #[serde(rename = "S_F_N_sqrtHz", skip_serializing_if = "Option::is_none")]
    pub s_f_n_sqrthz: Option<f64>,
    /// Frequency of the quoted force floor, Hz (pair kind).
    #[serde(rename = "f_meas_Hz", skip_serializing_if = "Option::is_none")]
    pub f_meas_hz: Option<f64>,
}

/// A deserialised experiment description (see the catalog files for the
/// on-disk JSON layout). Call [`ExperimentConfig::resolve`] to obtain a
/// validated, unit-resolved [`Experiment`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Free-form identifier, used in messages and table metadata.
    pub name: String,
    /// The measurement class.
    pub kind: ExperimentKind,
    /// The mass geometry.
    pub geometry: GeometrySpec,
    /// The mechanical mode.
    pub mech: MechSpec,
    /// The quoted experimental limit.
    pub datum: DatumSpec,
    /// For composite geometries: keep only the first listed body
    /// (conventionally the dominant sphere) and drop the rest.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub sphere_only: bool,
}

/// The quoted limit with resolved units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Datum {
    /// Largest compatible magnitude of the temperature shift, K. The
    /// predicted shift may have either sign (the collapse noise heats,
    /// the collapse dissipation cools); `|ΔT|` is what thermometry caps.
    TempShiftMax {
        /// The shift-magnitude cap, K.
        delta_t_max: f64,
    },
    /// Measured force amplitude spectral density.
    ForceAsd {
        /// One-sided amplitude, N/√Hz.
        s_f: f64,
        /// Angular measurement frequency, rad/s.
        omega_meas: f64,
    },
}

impl Datum {
    /// The threshold value the predicted observable is compared against
    /// (K for cantilever kinds, N/√Hz for pair kinds).
    pub fn threshold(&self) -> f64 {
        match self {
            Datum::TempShiftMax { delta_t_max } => *delta_t_max,
            Datum::ForceAsd { s_f, .. } => *s_f,
        }
    }
}

/// The mass content an experiment exposes to the collapse noise.
#[derive(Debug, Clone, PartialEq)]
pub enum ExperimentTarget {
    /// Rigidly co-moving bodies; their collapse rates add.
    Bodies(Vec<MassGeometry>),
    /// A separated identical pair read out differentially.
    Pair(GeometryPair),
}

/// A validated experiment with resolved mechanical parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    /// Identifier from the config.
    pub name: String,
    /// Measurement class.
    pub kind: ExperimentKind,
    /// Mass content.
    pub target: ExperimentTarget,
    /// Resolved mechanical mode.
    pub mech: MechanicalConfig,
    /// Resolved datum.
    pub datum: Datum,
}

fn exactly_one(
    what: &str,
    a_name: &str,
    a: Option<f64>,
    b_name: &str,
    b: Option<f64>,
) -> Result<(f64, bool)> {
    match (a, b) {
        (Some(v), None) => Ok((v, true)),
        (None, Some(v)) => Ok((v, false)),
        (Some(_), Some(_)) => Err(DcslError::InvalidConfig(format!(
            "give exactly one of {a_name} and {b_name} for the {what}, not both"
        ))),
        (None, None) => Err(DcslError::InvalidConfig(format!(
            "the {what} needs either {a_name} or {b_name}"
        ))),
    }
}

fn positive(value: f64, what: &str) -> Result<f64> {
    if !value.is_finite() || value <= 0.0 {
        return Err(DcslError::InvalidConfig(format!(
            "{what} must be finite and > 0, got {value:e}"
        )));
    }
    Ok(value)
}

impl ExperimentConfig {
    /// Parses a JSON experiment description.
    pub fn from_json_str(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| {
            DcslError::InvalidConfig(format!("malformed experiment JSON: {e}"))
        })
    }

    /// Reads and parses a JSON experiment description from disk.
    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            DcslError::InvalidConfig(format!("cannot read {}: {e}", path.display()))
        })?;
        Self::from_json_str(&text).map_err(|e| {
            DcslError::InvalidConfig(format!("{}: {e}", path.display()))
        })
    }

    /// Validates the description and resolves alternative unit fields into
    /// an [`Experiment`].
    pub fn resolve(&self) -> Result<Experiment> {
        // Frequency and damping first; mass may depend on omega0.
        let (freq, is_angular) = exactly_one(
            "resonance frequency",
            "omega0_rad_s",
            self.mech.omega0_rad_s,
            "f0_Hz",
            self.mech.f0_hz,
        )?;
        let omega0 = if is_angular {
            positive(freq, "omega0_rad_s")?
        } else {
            2.0 * std::f64::consts::PI * positive(freq, "f0_Hz")?
        };
        let (dval, is_rate) = exactly_one(
            "damping",
            "gamma_m_1_s",
            self.mech.gamma_m_1_s,
            "Q",
            self.mech.q,
        )?;
        let gamma_m =
            if is_rate { positive(dval, "gamma_m_1_s")? } else { omega0 / positive(dval, "Q")? };
        if !self.mech.t_env_k.is_finite() || self.mech.t_env_k < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "T_env_K must be finite and >= 0, got {:e}",
                self.mech.t_env_k
            )));
        }

        // Geometry, with the sphere_only restriction applied.
        let target = match (&self.geometry, self.sphere_only) {
            (GeometrySpec::Single { body }, false) => {
                body.validate()?;
                ExperimentTarget::Bodies(vec![body.clone()])
            }
            (GeometrySpec::Composite { bodies }, keep_first) => {
                if bodies.is_empty() {
                    return Err(DcslError::InvalidConfig(
                        "composite geometry needs at least one body".into(),
                    ));
                }
                let kept: Vec<MassGeometry> = if keep_first {
                    bodies[..1].to_vec()
                } else {
                    bodies.clone()
                };
                for body in &kept {
                    body.validate()?;
                }
                ExperimentTarget::Bodies(kept)
            }
            (GeometrySpec::Pair { body, r12_m }, false) => {
                ExperimentTarget::Pair(GeometryPair::new(body.clone(), *r12_m)?)
            }
            (_, true) => {
                return Err(DcslError::InvalidConfig(
                    "sphere_only applies only to composite geometries".into(),
                ))
            }
        };

        // Mass: m_kg | k/omega0², with the body mass as the pair fallback.
        let m = match (self.mech.m_kg, self.mech.k_stiff_n_m, &target) {
            (Some(m), None, _) => positive(m, "m_kg")?,
            (None, Some(k), _) => positive(k, "k_stiff_N_m")? / (omega0 * omega0),
            (None, None, ExperimentTarget::Pair(pair)) => pair.base.mass(),
            (None, None, _) => {
                return Err(DcslError::InvalidConfig(
                    "the mechanical mode needs either m_kg or k_stiff_N_m".into(),
                ))
            }
            (Some(_), Some(_), _) => {
                return Err(DcslError::InvalidConfig(
                    "give exactly one of m_kg and k_stiff_N_m, not both".into(),
                ))
            }
        };

        let mech = MechanicalConfig { m, omega0, gamma_m, t_env: self.mech.t_env_k };
        mech.validate()?;

        // Kind/geometry/datum cross-checks.
        let datum = match self.kind {
            ExperimentKind::ThermalCantilever => {
                if matches!(target, ExperimentTarget::Pair(_)) {
                    return Err(DcslError::InvalidConfig(
                        "thermal_cantilever experiments take single or composite \
                         geometries, not a pair"
                            .into(),
                    ));
                }
                if self.datum.s_f_n_sqrthz.is_some() || self.datum.f_meas_hz.is_some() {
                    return Err(DcslError::InvalidConfig(
                        "thermal_cantilever experiments quote delta_T_max_K, \
                         not a force floor"
                            .into(),
                    ));
                }
                let dt = self.datum.delta_t_max_k.ok_or_else(|| {
                    DcslError::InvalidConfig(
                        "thermal_cantilever experiments need datum.delta_T_max_K".into(),
                    )
                })?;
                Datum::TempShiftMax { delta_t_max: positive(dt, "delta_T_max_K")? }
            }
            ExperimentKind::ForceNoisePair => {
                if !matches!(target, ExperimentTarget::Pair(_)) {
                    return Err(DcslError::InvalidConfig(
                        "force_noise_pair experiments need a pair geometry".into(),
                    ));
                }
                if self.datum.delta_t_max_k.is_some() {
                    return Err(DcslError::InvalidConfig(
                        "force_noise_pair experiments quote a force floor, \
                         not delta_T_max_K"
                            .into(),
                    ));
                }
                let s_f = self.datum.s_f_n_sqrthz.ok_or_else(|| {
                    DcslError::InvalidConfig(
                        "force_noise_pair experiments need datum.S_F_N_sqrtHz".into(),
                    )
                })?;
                let f_meas = self.datum.f_meas_hz.ok_or_else(|| {
                    DcslError::InvalidConfig(
                        "force_noise_pair experiments need datum.f_meas_Hz".into(),
                    )
                })?;
                Datum::ForceAsd {
                    s_f: positive(s_f, "S_F_N_sqrtHz")?,
                    omega_meas: 2.0 * std::f64::consts::PI * positive(f_meas, "f_meas_Hz")?,
                }
            }
        };

        Ok(Experiment { name: self.name.clone(), kind: self.kind, target, mech, datum })
    }
}

/// Outcome of the model-validity check at one `(r_C, T_noise)` point.
/// Independent of `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityReport {
    /// Thermal position spread of the mode, m.
    pub delta_x: f64,
    /// Thermal velocity spread of the mode, m/s.
    pub delta_v: f64,
    /// Localisation length over position spread, `r_C (1+chi) / Δx`.
    pub position_margin: f64,
    /// Momentum-damping scale over thermal momentum,
    /// `8 k_B T_noise r_C / (ħ Δv)`; infinite in the non-dissipative limit.
    pub momentum_margin: f64,
    /// Both margins exceed 1.
    pub satisfied: bool,
}

/// Checks that the mode's thermal phase-space spread stays inside the
/// region where the quadratic (small-displacement) expansion of the
/// collapse master equation is trustworthy.
///
/// * Position: the spread `Δx = sqrt(k_B T_env / m ω0²)` must stay below
///   the smeared localisation length `r_C (1 + chi)`.
/// * Momentum: the velocity spread `Δv = sqrt(k_B T_env / m)` must stay
///   below the dissipative momentum scale per nucleon-equivalent,
///   `8 k_B T_noise r_C / ħ` (infinite for `T_noise = ∞`, where the
///   momentum expansion is exact at this order).
pub fn validity_check(mech: &MechanicalConfig, params: &CollapseParams) -> ValidityReport {
    let delta_x = (K_B * mech.t_env / (mech.m * mech.omega0 * mech.omega0)).sqrt();
    let delta_v = (K_B * mech.t_env / mech.m).sqrt();
    let position_margin = params.r_c * (1.0 + params.chi()) / delta_x;
    let momentum_margin = match params.t_csl {
        NoiseTemperature::Infinite => f64::INFINITY,
        NoiseTemperature::Finite(t) => 8.0 * K_B * t * params.r_c / (HBAR * delta_v),
    };
    ValidityReport {
        delta_x,
        delta_v,
        position_margin,
        momentum_margin,
        satisfied: position_margin > 1.0 && momentum_margin > 1.0,
    }
}

/// Status of one exclusion-bound inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    /// The prediction crossed the datum; `lambda_max` brackets the root.
    BracketedRoot,
    /// The prediction stays below the datum up to `lambda = 1e4`.
    NoExclusionBelowCap,
    /// A root was found, but the validity check fails at this
    /// `(r_C, T_noise)`: the rate is reported yet should not be read as a
    /// trustworthy exclusion.
    InvalidRegion,
}

impl fmt::Display for BoundStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundStatus::BracketedRoot => write!(f, "bracketed-root"),
            BoundStatus::NoExclusionBelowCap => write!(f, "no-exclusion-below-cap"),
            BoundStatus::InvalidRegion => write!(f, "invalid-region"),
        }
    }
}

/// One point of an exclusion curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LambdaBound {
    /// Correlation length of this inversion, m.
    pub r_c: f64,
    /// Largest collapse rate compatible with the datum, 1/s; `None` when
    /// the status is `no-exclusion-below-cap`.
    pub lambda_max: Option<f64>,
    /// How the inversion terminated.
    pub status: BoundStatus,
    /// Validity margins at this `(r_C, T_noise)`.
    pub validity: ValidityReport,
}

/// An exclusion bound over a grid of correlation lengths at fixed noise
/// temperature.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExclusionCurve {
    /// The noise temperature of the scan.
    pub t_csl: NoiseTemperature,
    /// One bound per grid point, in grid order.
    pub points: Vec<LambdaBound>,
}

/// The unit-rate precomputation: collapse coefficients at `lambda = 1`.
/// All coefficients are linear in `lambda` while `varkappa_m` is
/// `lambda`-independent, so one geometry integration serves every rate.
enum UnitRate {
    Bodies { eta_1: f64 },
    Pair(PairCoefficients),
}

impl Experiment {
    /// Runs [`validity_check`] for this experiment's mechanical mode.
    pub fn validity_check(&self, params: &CollapseParams) -> ValidityReport {
        validity_check(&self.mech, params)
    }

    fn unit_rate(&self, params_unit: &CollapseParams) -> Result<UnitRate> {
        match &self.target {
            ExperimentTarget::Bodies(bodies) => {
                let mut eta_1 = 0.0;
                for body in bodies {
                    eta_1 += eta(body, params_unit)?;
                }
                Ok(UnitRate::Bodies { eta_1 })
            }
            ExperimentTarget::Pair(pair) => {
                Ok(UnitRate::Pair(PairCoefficients::compute(pair, params_unit)?))
            }
        }
    }

    fn predict_at(&self, unit: &UnitRate, params_unit: &CollapseParams, lambda: f64) -> Result<f64> {
        let prediction = match (unit, &self.datum) {
            (UnitRate::Bodies { eta_1 }, Datum::TempShiftMax { .. }) => {
                let coeffs = CollapseCoefficients {
                    eta: lambda * eta_1,
                    gamma_csl: lambda * eta_1 * params_unit.gamma_prime(self.mech.m),
                    varkappa: params_unit.varkappa_m() / self.mech.m,
                    varkappa_m: params_unit.varkappa_m(),
                    axis: [1.0, 0.0, 0.0],
                };
                temp_shift(&self.mech, &coeffs)?
            }
            (UnitRate::Pair(pc1), Datum::ForceAsd { omega_meas, .. }) => {
                let pc = PairCoefficients {
                    eta: lambda * pc1.eta,
                    sigma: lambda * pc1.sigma,
                    eta_minus_sigma: lambda * pc1.eta_minus_sigma,
                    omega_coupling: lambda * pc1.omega_coupling,
                    varkappa: pc1.varkappa,
                    varkappa_m: pc1.varkappa_m,
                    axis: pc1.axis,
                };
                let s_ff = csl_force_psd(*omega_meas, &self.mech, &pc)?;
                // Two-sided angular force PSD -> one-sided amplitude density.
                (2.0 * s_ff).sqrt()
            }
            _ => {
                return Err(DcslError::InvalidConfig(
                    "experiment kind and geometry arrangement disagree".into(),
                ))
            }
        };
        if !prediction.is_finite() {
            return Err(DcslError::UnstableDynamics(format!(
                "predicted observable is not finite at lambda = {lambda:e}"
            )));
        }
        Ok(prediction)
    }

    /// The magnitude compared against [`Datum::threshold`]: `|ΔT|` for
    /// temperature data (both heating and cooling are excluded), the
    /// amplitude itself (already non-negative) for force floors.
    fn exceedance(&self, prediction: f64) -> f64 {
        match self.datum {
            Datum::TempShiftMax { .. } => prediction.abs(),
            Datum::ForceAsd { .. } => prediction,
        }
    }

    /// Predicted observable at the given collapse parameters: the
    /// temperature shift (K) for cantilever kinds, the one-sided force
    /// amplitude density (N/√Hz) at the quoted frequency for pair kinds.
    pub fn predicted_observable(&self, params: &CollapseParams) -> Result<f64> {
        let params_unit = CollapseParams::new(1.0, params.r_c, params.t_csl)?;
        let unit = self.unit_rate(&params_unit)?;
        self.predict_at(&unit, &params_unit, params.lambda)
    }

    /// Largest collapse rate `lambda` compatible with the datum at fixed
    /// `(r_C, T_noise)`.
    ///
    /// Scans `lambda ∈ [1e-20, 1e4]` at 60 points per decade for the first
    /// crossing of the datum (in magnitude — see [`Experiment::exceedance`]),
    /// then bisects `log10 lambda` until the bracket is narrower than
    /// `1e-4` decades **and** the prediction at the returned rate
    /// overshoots the datum by at most 0.05%. Predictions that never reach
    /// the datum return `no-exclusion-below-cap` with no rate. When the
    /// root lies in a region failing [`validity_check`], the rate is still
    /// reported but the status downgrades to `invalid-region`.
    pub fn lambda_bound(
        &self,
        r_c: f64,
        t_csl: NoiseTemperature,
    ) -> Result<LambdaBound> {
        let params_unit = CollapseParams::new(1.0, r_c, t_csl)?;
        let validity = self.validity_check(&params_unit);
        let root_status = if validity.satisfied {
            BoundStatus::BracketedRoot
        } else {
            BoundStatus::InvalidRegion
        };
        let unit = self.unit_rate(&params_unit)?;
        let datum = self.datum.threshold();

        // Degenerate early exit: already excluded at the scan floor.
        if self.exceedance(self.predict_at(&unit, &params_unit, LAMBDA_MIN)?) >= datum {
            return Ok(LambdaBound {
                r_c,
                lambda_max: Some(LAMBDA_MIN),
                status: root_status,
                validity,
            });
        }

        let decades = (LAMBDA_MAX / LAMBDA_MIN).log10().round() as usize;
        let n_scan = decades * SCAN_PER_DECADE;
        let log_min = LAMBDA_MIN.log10();
        let step = (LAMBDA_MAX.log10() - log_min) / n_scan as f64;
        let mut bracket = None;
        for i in 1..=n_scan {
            let hi = log_min + i as f64 * step;
            if self.exceedance(self.predict_at(&unit, &params_unit, 10f64.powf(hi))?) >= datum {
                bracket = Some((hi - step, hi));
                break;
            }
        }
        let Some((mut lo, mut hi)) = bracket else {
            return Ok(LambdaBound {
                r_c,
                lambda_max: None,
                status: BoundStatus::NoExclusionBelowCap,
                validity,
            });
        };

        let mut pred_hi = self.exceedance(self.predict_at(&unit, &params_unit, 10f64.powf(hi))?);
        while (hi - lo > 1e-4 || pred_hi > 1.0005 * datum) && hi - lo > 1e-6 {
            let mid = 0.5 * (lo + hi);
            let p = self.exceedance(self.predict_at(&unit, &params_unit, 10f64.powf(mid))?);
            if p >= datum {
                hi = mid;
                pred_hi = p;
            } else {
                lo = mid;
            }
        }
        Ok(LambdaBound {
            r_c,
            lambda_max: Some(10f64.powf(hi)),
            status: root_status,
            validity,
        })
    }

    /// [`Experiment::lambda_bound`] over a grid of correlation lengths
    /// (evaluated in parallel, returned in grid order).
    pub fn exclusion_curve(
        &self,
        r_c_grid: &[f64],
        t_csl: NoiseTemperature,
    ) -> Result<ExclusionCurve> {
        let points: Vec<LambdaBound> = r_c_grid
            .par_iter()
            .map(|&r_c| self.lambda_bound(r_c, t_csl))
            .collect::<Result<_>>()?;
        Ok(ExclusionCurve { t_csl, points })
    }
}

/// `n` logarithmically spaced points from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) || lo <= 0.0 {
        return Err(DcslError::InvalidConfig(format!(
            "log grid needs finite bounds with lo > 0, got [{lo:e}, {hi:e}]"
        )));
    }
    if n == 0 {
        return Err(DcslError::InvalidConfig("grids need at least one point".into()));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    if hi <= lo {
        return Err(DcslError::InvalidConfig(format!(
            "log grid needs hi > lo, got [{lo:e}, {hi:e}]"
        )));
    }
    let (llo, lhi) = (lo.log10(), hi.log10());
    let mut out: Vec<f64> = (0..n)
        .map(|i| 10f64.powf(llo + (lhi - llo) * i as f64 / (n - 1) as f64))
        .collect();
    out[0] = lo;
    out[n - 1] = hi;
    Ok(out)
}

/// `n` linearly spaced points from `lo` to `hi` inclusive.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(DcslError::InvalidConfig(format!(
            "linear grid needs finite bounds, got [{lo:e}, {hi:e}]"
        )));
    }
    if n == 0 {
        return Err(DcslError::InvalidConfig("grids need at least one point".into()));
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    if hi <= lo {
        return Err(DcslError::InvalidConfig(format!(
            "linear grid needs hi > lo, got [{lo:e}, {hi:e}]"
        )));
    }
    let mut out: Vec<f64> =
        (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    out[0] = lo;
    out[n - 1] = hi;
    Ok(out)
}

/// Nucleon-count helper for reporting: `mass / m0`.
pub fn nucleon_equivalent(mass_kg: f64) -> f64 {
    mass_kg / M0
}
