//! Closed-form displacement-noise spectra of collapse-driven mechanical
//! oscillators, and the temperatures inferred from them.
//!
//! # Conventions
//!
//! All spectra are **two-sided power spectral densities in angular
//! frequency**: for a stationary process `x(t)`,
//!
//! ```text
//! S_xx(ω) = ∫ dτ e^{-iωτ} ⟨x(t) x(t+τ)⟩_sym ,
//! ⟨x²⟩ = (1/2π) ∫ dω S_xx(ω) ,
//! ```
//!
//! so a white force of intensity `W` (N²·s) appears as the flat level `W`.
//! Displacement spectra carry units m²·s, force spectra N²·s.
//!
//! The mechanical mode is a damped oscillator of mass `m`, resonance
//! `omega0` and intrinsic damping `gamma_m`, coupled to
//!
//! * a thermal bath at `t_env` (symmetrised quantum force spectrum
//!   `ħ γ_m m ω coth(ħω / 2 k_B T)`, which tends to `2 m γ_m k_B T` at high
//!   temperature and to `ħ γ_m m |ω|` at `T = 0`);
//! * the collapse noise, contributing white force noise `ħ² eta`, a
//!   dissipative correction `(varkappa m)² (gamma² + ω²)` and extra
//!   damping `gamma_csl = 2 eta ħ varkappa_m / m`;
//! * optionally a driven optical cavity, which adds radiation-pressure
//!   noise and the usual optical spring/damping.

use serde::{Deserialize, Serialize};

use crate::coeffs::{CollapseCoefficients, PairCoefficients};
use crate::constants::{HBAR, K_B};
use crate::error::{DcslError, Result};
use crate::kernels::t_coth;
use crate::quad::{integrate_panels, QuadOptions};

/// A damped mechanical mode read out along the motion axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MechanicalConfig {
    /// Effective mass, kg. For pair (relative-coordinate) experiments this
    /// is the mass of **one** body of the pair.
    pub m: f64,
    /// Angular resonance frequency, rad/s.
    pub omega0: f64,
    /// Intrinsic (environmental) damping rate, 1/s.
    pub gamma_m: f64,
    /// Environment temperature, K.
    pub t_env: f64,
}

impl MechanicalConfig {
    /// Validates the stored fields.
    pub fn validate(&self) -> Result<()> {
        if !self.m.is_finite() || self.m <= 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "mechanical mass must be finite and > 0, got {:e}",
                self.m
            )));
        }
        if !self.omega0.is_finite() || self.omega0 <= 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "resonance frequency must be finite and > 0, got {:e}",
                self.omega0
            )));
        }
        if !self.gamma_m.is_finite() || self.gamma_m < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "mechanical damping must be finite and >= 0, got {:e}",
                self.gamma_m
            )));
        }
        if !self.t_env.is_finite() || self.t_env < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "environment temperature must be finite and >= 0 K, got {:e}",
                self.t_env
            )));
        }
        Ok(())
    }
}

/// A driven single-mode optical cavity dispersively coupled to the
/// mechanical mode (`H_int = ħ g â†â x`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CavityConfig {
    /// Cavity resonance, rad/s.
    pub omega_c: f64,
    /// Drive laser frequency, rad/s.
    pub omega_l: f64,
    /// Cavity amplitude decay rate, 1/s.
    pub kappa_c: f64,
    /// Optomechanical coupling per photon, 1/(m·s).
    pub g: f64,
    /// Input optical power, W.
    pub p_in: f64,
}

impl CavityConfig {
    /// Validates the stored fields.
    pub fn validate(&self) -> Result<()> {
        for (value, what) in [
            (self.omega_c, "cavity frequency"),
            (self.kappa_c, "cavity decay rate"),
        ] {
            if !value.is_finite() || value <= 0.0 {
                return Err(DcslError::InvalidConfig(format!(
                    "{what} must be finite and > 0, got {value:e}"
                )));
            }
        }
        if !self.omega_l.is_finite() || self.omega_l <= 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "laser frequency must be finite and > 0, got {:e}",
                self.omega_l
            )));
        }
        if !self.g.is_finite() {
            return Err(DcslError::InvalidConfig("coupling g must be finite".into()));
        }
        if !self.p_in.is_finite() || self.p_in < 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "input power must be finite and >= 0, got {:e}",
                self.p_in
            )));
        }
        Ok(())
    }

    /// Static cavity detuning `Δ = omega_c − omega_l`, rad/s.
    pub fn detuning(&self) -> f64 {
        self.omega_c - self.omega_l
    }

    /// Steady-state intracavity photon number
    /// `|α|² = 2 κ (P_in / ħ ω_c) / (κ² + Δ²)`.
    pub fn photon_number(&self) -> f64 {
        let delta = self.detuning();
        let alpha_in_sq = self.p_in / (HBAR * self.omega_c);
        2.0 * self.kappa_c * alpha_in_sq / (self.kappa_c * self.kappa_c + delta * delta)
    }
}

/// One sampled point of a displacement spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumPoint {
    /// Angular frequency, rad/s.
    pub omega: f64,
    /// Two-sided displacement PSD, m²·s.
    pub s_xx: f64,
}

/// Total velocity-damping rate `gamma = gamma_m + gamma_csl` with the
/// collapse contribution evaluated for the mechanical mass `mech.m`.
pub fn total_damping(mech: &MechanicalConfig, coeffs: &CollapseCoefficients) -> f64 {
    mech.gamma_m + 2.0 * coeffs.eta * HBAR * coeffs.varkappa_m / mech.m
}

fn pair_total_damping(mech: &MechanicalConfig, pair: &PairCoefficients) -> f64 {
    mech.gamma_m + 2.0 * pair.eta * HBAR * pair.varkappa_m / mech.m
}

/// Symmetrised thermal force spectrum
/// `ħ γ_m m ω coth(ħω / 2 k_B T)`, N²·s; continuous at `ω = 0` and equal
/// to `ħ γ_m m |ω|` at `T = 0`.
fn thermal_force_psd(omega: f64, mech: &MechanicalConfig) -> f64 {
    if mech.t_env == 0.0 {
        return HBAR * mech.gamma_m * mech.m * omega.abs();
    }
    let t = HBAR * omega / (2.0 * K_B * mech.t_env);
    2.0 * mech.m * mech.gamma_m * K_B * mech.t_env * t_coth(t)
}

/// Denominator pieces of the cavity response at ±ω.
fn cavity_response(omega: f64, cavity: &CavityConfig) -> (f64, f64) {
    let delta = cavity.detuning();
    let k2 = cavity.kappa_c * cavity.kappa_c;
    let minus = k2 + (delta - omega) * (delta - omega);
    let plus = k2 + (delta + omega) * (delta + omega);
    (minus, plus)
}

/// Squared effective resonance frequency at probe frequency `omega`,
/// including the cavity optical-spring shift (rad²/s²; may be negative
/// for a strongly anti-trapping drive):
///
/// ```text
/// ω_eff²(ω) = ω0² − 2 |α|² ħ g² Δ (Δ² − ω² + κ²)
///             / ( m [(Δ+ω)² + κ²][(Δ−ω)² + κ²] )
/// ```
pub fn effective_frequency_sq(
    omega: f64,
    mech: &MechanicalConfig,
    cavity: Option<&CavityConfig>,
) -> f64 {
    let base = mech.omega0 * mech.omega0;
    match cavity {
        None => base,
        Some(c) => {
            let delta = c.detuning();
            let (minus, plus) = cavity_response(omega, c);
            let shift = 2.0 * c.photon_number() * HBAR * c.g * c.g * delta
                * (delta * delta - omega * omega + c.kappa_c * c.kappa_c)
                / (mech.m * plus * minus);
            base - shift
        }
    }
}

/// Effective damping rate at probe frequency `omega`, 1/s:
/// the total mechanical damping `gamma` plus the cavity cold-damping term
/// `4 |α|² ħ g² κ Δ / ( m [(Δ+ω)² + κ²][(Δ−ω)² + κ²] )`.
pub fn effective_damping(
    omega: f64,
    mech: &MechanicalConfig,
    cavity: Option<&CavityConfig>,
    gamma_total: f64,
) -> f64 {
    match cavity {
        None => gamma_total,
        Some(c) => {
            let delta = c.detuning();
            let (minus, plus) = cavity_response(omega, c);
            gamma_total
                + 4.0 * c.photon_number() * HBAR * c.g * c.g * c.kappa_c * delta
                    / (mech.m * plus * minus)
        }
    }
}

/// Radiation-pressure force noise of the driven cavity, N²·s:
/// `2 ħ² g² κ |α|² (κ² + Δ² + ω²) / ([κ² + (Δ−ω)²][κ² + (Δ+ω)²])`.
fn cavity_force_psd(omega: f64, cavity: &CavityConfig) -> f64 {
    let delta = cavity.detuning();
    let k2 = cavity.kappa_c * cavity.kappa_c;
    let (minus, plus) = cavity_response(omega, cavity);
    2.0 * HBAR * HBAR * cavity.g * cavity.g * cavity.kappa_c * cavity.photon_number()
        * (k2 + delta * delta + omega * omega)
        / (minus * plus)
}

/// Displacement-noise spectrum of a single optomechanical mode, m²·s:
///
/// ```text
/// S_xx(ω) = [ S_th(ω) + S_cav(ω) + ħ² eta (1 + (varkappa m)²(γ² + ω²)) ]
///           / ( m² [(ω_eff²(ω) − ω²)² + γ_eff(ω)² ω²] )
/// ```
///
/// with `γ = gamma_m + gamma_csl`. Pass `cavity = None` for a purely
/// mechanical readout (SQUID-detected cantilever and similar).
pub fn dns_optomech(
    omega: f64,
    mech: &MechanicalConfig,
    cavity: Option<&CavityConfig>,
    coeffs: &CollapseCoefficients,
) -> Result<f64> {
    mech.validate()?;
    if let Some(c) = cavity {
        c.validate()?;
    }
    if !omega.is_finite() {
        return Err(DcslError::InvalidConfig(format!("omega must be finite, got {omega:e}")));
    }
    let gamma = total_damping(mech, coeffs);
    let km = coeffs.varkappa_m;
    let numerator = thermal_force_psd(omega, mech)
        + cavity.map_or(0.0, |c| cavity_force_psd(omega, c))
        + HBAR * HBAR * coeffs.eta * (1.0 + km * km * (gamma * gamma + omega * omega));

    let w_eff_sq = effective_frequency_sq(omega, mech, cavity);
    let g_eff = effective_damping(omega, mech, cavity, gamma);
    let resp = w_eff_sq - omega * omega;
    let denominator = mech.m * mech.m * (resp * resp + g_eff * g_eff * omega * omega);
    if denominator == 0.0 {
        return Err(DcslError::UnstableDynamics(format!(
            "zero response denominator at omega = {omega:e} rad/s (undamped \
             resonance); the stationary spectrum does not exist"
        )));
    }
    Ok(numerator / denominator)
}

/// Displacement-noise spectrum of a thermally limited cantilever mode
/// (no cavity), m²·s.
pub fn dns_cantilever(
    omega: f64,
    mech: &MechanicalConfig,
    coeffs: &CollapseCoefficients,
) -> Result<f64> {
    dns_optomech(omega, mech, None, coeffs)
}

/// Shifted resonance and damping of the relative coordinate of a pair.
///
/// Returns `(omega0_tilde_sq, gamma_tilde, gamma)`: the shifted squared
/// resonance, the shifted damping rate, and the unshifted total damping,
/// or an error when the collapse-induced shifts destabilise the mode.
pub fn pair_effective_dynamics(
    mech: &MechanicalConfig,
    pair: &PairCoefficients,
) -> Result<(f64, f64, f64)> {
    let gamma = pair_total_damping(mech, pair);
    let varkappa = pair.varkappa_m / mech.m;
    let shift = 2.0 * varkappa * pair.sigma * HBAR;
    let gamma_tilde = gamma - shift;
    let omega0_tilde_sq = mech.omega0 * mech.omega0 - gamma * shift;
    if gamma_tilde <= 0.0 {
        return Err(DcslError::UnstableDynamics(format!(
            "collapse correlations overwhelm damping: gamma_tilde = \
             {gamma_tilde:e} 1/s <= 0"
        )));
    }
    if omega0_tilde_sq <= 0.0 {
        return Err(DcslError::UnstableDynamics(format!(
            "collapse correlations destabilise the trap: omega0_tilde² = \
             {omega0_tilde_sq:e} (rad/s)² <= 0"
        )));
    }
    Ok((omega0_tilde_sq, gamma_tilde, gamma))
}

/// Displacement-noise spectrum of the relative coordinate of two
/// identical collapse-correlated oscillators, m²·s:
///
/// ```text
/// S(ω) = ħ² (eta − sigma) [1 + (varkappa m)²(γ² + ω²)]
///        / ( m² [(ω̃0² − ω²)² + γ̃² ω²] )
/// ```
///
/// where `ω̃0² = ω0² − 2 γ varkappa sigma ħ` and
/// `γ̃ = γ − 2 varkappa sigma ħ` absorb the correlated part of the
/// dissipative back-action. Thermal noise is not included: the quantity is
/// the collapse-specific noise floor of a force-sensing pair.
pub fn dns_relative(omega: f64, mech: &MechanicalConfig, pair: &PairCoefficients) -> Result<f64> {
    mech.validate()?;
    if !omega.is_finite() {
        return Err(DcslError::InvalidConfig(format!("omega must be finite, got {omega:e}")));
    }
    let (omega0_tilde_sq, gamma_tilde, gamma) = pair_effective_dynamics(mech, pair)?;
    let km = pair.varkappa_m;
    let numerator = HBAR * HBAR * pair.eta_minus_sigma
        * (1.0 + km * km * (gamma * gamma + omega * omega));
    let resp = omega0_tilde_sq - omega * omega;
    let denominator =
        mech.m * mech.m * (resp * resp + gamma_tilde * gamma_tilde * omega * omega);
    if denominator == 0.0 {
        return Err(DcslError::UnstableDynamics(format!(
            "zero response denominator at omega = {omega:e} rad/s"
        )));
    }
    Ok(numerator / denominator)
}

/// Collapse force-noise spectrum acting on the relative coordinate of a
/// pair, N²·s:
/// `S_FF(ω) = ħ² (eta − sigma) [1 + (varkappa m)²(γ² + ω²)]`.
///
/// This is `dns_relative` stripped of the mechanical response — the
/// quantity compared against measured force-noise floors.
pub fn csl_force_psd(omega: f64, mech: &MechanicalConfig, pair: &PairCoefficients) -> Result<f64> {
    mech.validate()?;
    if !omega.is_finite() {
        return Err(DcslError::InvalidConfig(format!("omega must be finite, got {omega:e}")));
    }
    let gamma = pair_total_damping(mech, pair);
    let km = pair.varkappa_m;
    Ok(HBAR * HBAR * pair.eta_minus_sigma * (1.0 + km * km * (gamma * gamma + omega * omega)))
}

/// Collapse-induced shift of the resonantly inferred mode temperature, K:
///
/// ```text
/// ΔT = ħ² eta [1 + (varkappa m)²(γ² + ω0²)] / (2 k_B m γ)
///      − (gamma_csl / γ) T_env ,            γ = gamma_m + gamma_csl .
/// ```
///
/// Requires an underdamped mode (`γ < ω0`).
pub fn temp_shift(mech: &MechanicalConfig, coeffs: &CollapseCoefficients) -> Result<f64> {
    mech.validate()?;
    let gamma_csl = 2.0 * coeffs.eta * HBAR * coeffs.varkappa_m / mech.m;
    let gamma = mech.gamma_m + gamma_csl;
    if coeffs.eta == 0.0 && gamma_csl == 0.0 {
        return Ok(0.0);
    }
    if gamma <= 0.0 || gamma >= mech.omega0 {
        return Err(DcslError::InvalidConfig(format!(
            "temperature shift requires an underdamped mode with gamma > 0: \
             gamma = {gamma:e} 1/s, omega0 = {:e} rad/s",
            mech.omega0
        )));
    }
    let km = coeffs.varkappa_m;
    let heating = HBAR * HBAR * coeffs.eta
        * (1.0 + km * km * (gamma * gamma + mech.omega0 * mech.omega0))
        / (2.0 * K_B * mech.m * gamma);
    Ok(heating - gamma_csl / gamma * mech.t_env)
}

/// Mode temperature inferred from the resonance, closed form:
/// `T_sys = T_env + ΔT`.
pub fn system_temperature(mech: &MechanicalConfig, coeffs: &CollapseCoefficients) -> Result<f64> {
    Ok(mech.t_env + temp_shift(mech, coeffs)?)
}

/// Mode temperature from the frequency-integrated spectrum:
/// `T_sys = (m ω0² / k_B) (1/2π) ∫ dω S_xx(ω)` over the full axis,
/// evaluated by adaptive quadrature of [`dns_cantilever`].
///
/// The resonance is resolved with a dedicated window `ω0 ± 40 γ`; the
/// integral is truncated at `max(10 ω0, ω0 + 5000 γ)`, which keeps the
/// neglected tail below ~2e-4 of the total. Errors with
/// [`DcslError::WindowClipped`] when `40 γ ≥ ω0`.
pub fn system_temperature_spectral(
    mech: &MechanicalConfig,
    coeffs: &CollapseCoefficients,
) -> Result<f64> {
    mech.validate()?;
    let gamma = total_damping(mech, coeffs);
    if gamma <= 0.0 {
        return Err(DcslError::InvalidConfig(
            "spectral temperature requires gamma > 0".into(),
        ));
    }
    let omega0 = mech.omega0;
    if 40.0 * gamma >= omega0 {
        return Err(DcslError::WindowClipped(format!(
            "the resonance window omega0 ± 40*gamma = {omega0:e} ± {:e} rad/s \
             crosses omega = 0; the mode is too broad for the spectral route",
            40.0 * gamma
        )));
    }

    let lower = omega0 - 40.0 * gamma;
    let mut edges = vec![0.0, 0.25 * lower, 0.5 * lower, 0.75 * lower];
    for k in [-40.0, -20.0, -10.0, -5.0, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 40.0]
    {
        edges.push(omega0 + k * gamma);
    }
    let upper = (10.0 * omega0).max(omega0 + 5000.0 * gamma);
    let wing_lo = omega0 + 40.0 * gamma;
    for i in 1..=8 {
        edges.push(wing_lo * (upper / wing_lo).powf(i as f64 / 8.0));
    }
    edges.dedup_by(|a, b| a == b);

    let opts = QuadOptions { rel_tol: 1e-10, abs_floor: 1e-300, max_panels: 60_000 };
    let integral = integrate_panels(
        // gamma > 0 makes the response denominator strictly positive, so
        // the spectrum evaluation cannot fail inside the window.
        |omega| dns_cantilever(omega, mech, coeffs).unwrap_or(f64::NAN),
        &edges,
        &opts,
    );
    let integral = match integral {
        Ok(r) if r.value.is_finite() => r.value,
        Ok(_) => {
            return Err(DcslError::UnstableDynamics(
                "spectrum evaluation produced non-finite values".into(),
            ))
        }
        Err(e) => return Err(e),
    };

    // One-sided integral; the spectrum is even in ω.
    Ok(mech.m * omega0 * omega0 / (K_B * std::f64::consts::PI) * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::CollapseCoefficients;
    use crate::geometry::MassGeometry;
    use crate::params::{CollapseParams, NoiseTemperature};

    fn rel(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            a.abs()
        } else {
            (a / b - 1.0).abs()
        }
    }

    fn mech() -> MechanicalConfig {
        MechanicalConfig { m: 1e-12, omega0: 2.0 * std::f64::consts::PI * 100.0, gamma_m: 6.283, t_env: 300.0 }
    }

    fn zero_coeffs() -> CollapseCoefficients {
        CollapseCoefficients {
            eta: 0.0,
            gamma_csl: 0.0,
            varkappa: 0.0,
            varkappa_m: 0.0,
            axis: [1.0, 0.0, 0.0],
        }
    }

    #[test]
    fn thermal_spectrum_is_the_classical_lorentzian_at_high_temperature() {
        let mech = mech();
        let c = zero_coeffs();
        for &omega in &[0.0, 100.0, 628.3, 1500.0] {
            let s = dns_cantilever(omega, &mech, &c).unwrap();
            let num = 2.0 * mech.m * mech.gamma_m * K_B * mech.t_env;
            let resp = mech.omega0 * mech.omega0 - omega * omega;
            let expected = num
                / (mech.m * mech.m
                    * (resp * resp + mech.gamma_m * mech.gamma_m * omega * omega));
            // ħω/2kT ~ 1e-13 here, so the coth correction is invisible.
            assert!(rel(s, expected) < 1e-10, "omega = {omega}");
        }
    }

    #[test]
    fn spectrum_is_even_and_nonnegative() {
        let p = CollapseParams::new(1e-7, 1e-7, NoiseTemperature::Finite(0.5)).unwrap();
        let g = MassGeometry::Point { mass_kg: 1e-12 };
        let c = CollapseCoefficients::compute(&g, &p).unwrap();
        let mech = mech();
        for &omega in &[0.0, 31.0, 628.3, 2000.0, 1e5] {
            let plus = dns_cantilever(omega, &mech, &c).unwrap();
            let minus = dns_cantilever(-omega, &mech, &c).unwrap();
            assert!(plus >= 0.0);
            assert!(rel(plus, minus) < 1e-14);
        }
    }

    #[test]
    fn zero_temperature_thermal_noise_is_the_quantum_floor() {
        let mech = MechanicalConfig { t_env: 0.0, ..mech() };
        let c = zero_coeffs();
        let omega = 777.0;
        let s = dns_cantilever(omega, &mech, &c).unwrap();
        let resp = mech.omega0 * mech.omega0 - omega * omega;
        let expected = HBAR * mech.gamma_m * mech.m * omega
            / (mech.m * mech.m * (resp * resp + mech.gamma_m * mech.gamma_m * omega * omega));
        assert!(rel(s, expected) < 1e-12);
    }

    #[test]
    fn spectral_and_closed_form_temperatures_agree_for_a_thermal_mode() {
        let mech = mech();
        let c = zero_coeffs();
        let t_closed = system_temperature(&mech, &c).unwrap();
        assert!(rel(t_closed, mech.t_env) < 1e-14);
        let t_spec = system_temperature_spectral(&mech, &c).unwrap();
        assert!(
            rel(t_spec, mech.t_env) < 1e-3,
            "spectral T = {t_spec}, env = {}",
            mech.t_env
        );
    }

    #[test]
    fn window_clipping_is_reported_for_broad_modes() {
        let broad = MechanicalConfig { gamma_m: 20.0, omega0: 100.0, ..mech() };
        match system_temperature_spectral(&broad, &zero_coeffs()) {
            Err(DcslError::WindowClipped(_)) => {}
            other => panic!("expected WindowClipped, got {other:?}"),
        }
    }

    #[test]
    fn temp_shift_vanishes_without_collapse_noise() {
        assert_eq!(temp_shift(&mech(), &zero_coeffs()).unwrap(), 0.0);
    }

    #[test]
    fn csl_limit_heats_without_cooling() {
        // At infinite noise temperature there is no dissipation, so the
        // shift is pure heating, linear in eta.
        let p = CollapseParams::csl(1e-8, 1e-7).unwrap();
        let g = MassGeometry::Point { mass_kg: 1e-12 };
        let c = CollapseCoefficients::compute(&g, &p).unwrap();
        let mech = mech();
        let dt = temp_shift(&mech, &c).unwrap();
        let expected = HBAR * HBAR * c.eta / (2.0 * K_B * mech.m * mech.gamma_m);
        assert!(rel(dt, expected) < 1e-12);
        assert!(dt > 0.0);
    }

    #[test]
    fn strong_dissipation_can_cool_a_hot_mode() {
        // gamma_csl large and T_csl low: the collapse bath extracts energy.
        let p = CollapseParams::new(2e-8, 1e-7, NoiseTemperature::Finite(1e-7)).unwrap();
        let g = MassGeometry::Point { mass_kg: 1e-12 };
        let c = CollapseCoefficients::compute(&g, &p).unwrap();
        let mech = MechanicalConfig { t_env: 300.0, ..mech() };
        let gamma_csl = 2.0 * c.eta * HBAR * c.varkappa_m / mech.m;
        assert!(
            gamma_csl > 10.0 * mech.gamma_m,
            "test premise: strong collapse damping, gamma_csl = {gamma_csl:e}"
        );
        assert!(
            gamma_csl + mech.gamma_m < mech.omega0,
            "test premise: still underdamped, gamma = {:e}",
            gamma_csl + mech.gamma_m
        );
        let t_sys = system_temperature(&mech, &c).unwrap();
        assert!(t_sys < mech.t_env, "T_sys = {t_sys} should be below 300 K");
    }

    #[test]
    fn cavity_terms_reduce_to_the_bare_mode_at_zero_power() {
        let cavity = CavityConfig {
            omega_c: 1e15,
            omega_l: 1e15 - 5e6,
            kappa_c: 1e6,
            g: 1e14,
            p_in: 0.0,
        };
        let mech = mech();
        let c = zero_coeffs();
        for &omega in &[100.0, 628.3, 900.0] {
            let with = dns_optomech(omega, &mech, Some(&cavity), &c).unwrap();
            let without = dns_cantilever(omega, &mech, &c).unwrap();
            assert!(rel(with, without) < 1e-14);
        }
        assert_eq!(cavity.photon_number(), 0.0);
    }

    #[test]
    fn optical_spring_shifts_frequency_and_damping_with_expected_signs() {
        // Blue-detuned drive (Δ < 0): softening spring, anti-damping.
        let blue = CavityConfig {
            omega_c: 1e15,
            omega_l: 1e15 + 5e6,
            kappa_c: 1e6,
            g: 1e16,
            p_in: 1e-3,
        };
        let mech = mech();
        let omega = mech.omega0;
        let w2 = effective_frequency_sq(omega, &mech, Some(&blue));
        let gd = effective_damping(omega, &mech, Some(&blue), mech.gamma_m);
        assert!(w2 > mech.omega0 * mech.omega0, "Δ<0 stiffens: {w2:e}");
        assert!(gd < mech.gamma_m, "Δ<0 anti-damps: {gd:e}");

        let red = CavityConfig { omega_l: 1e15 - 5e6, ..blue };
        let w2 = effective_frequency_sq(omega, &mech, Some(&red));
        let gd = effective_damping(omega, &mech, Some(&red), mech.gamma_m);
        assert!(w2 < mech.omega0 * mech.omega0, "Δ>0 softens: {w2:e}");
        assert!(gd > mech.gamma_m, "Δ>0 cold-damps: {gd:e}");
    }
}
