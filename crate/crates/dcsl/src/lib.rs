//! Numerics for a dissipative spontaneous-collapse (dCSL) model acting on
//! mechanical resonators.
//!
//! The model is parametrised by a collapse rate `lambda` (1/s), a
//! correlation length `r_C` (m) and a noise temperature `T_noise` (K, with
//! `∞` recovering the non-dissipative limit). The library computes, from
//! first principles:
//!
//! * **Collapse coefficients** ([`coeffs`]) — the diffusion rate `eta`,
//!   pair correlation `sigma`, static coupling `Omega` and dissipative
//!   scales (`gamma_csl`, `varkappa`) of point, spherical, cylindrical and
//!   cuboidal mass distributions, by exact closed forms where available
//!   and deterministic adaptive quadrature otherwise, with an independent
//!   Monte Carlo estimator for cross-checks.
//! * **Noise spectra** ([`spectra`]) — closed-form displacement/force
//!   spectral densities of collapse-driven oscillators (optionally inside
//!   a driven optical cavity), collapse-induced temperature shifts, and a
//!   spectral-integral temperature route.
//! * **Langevin validation** ([`langevin`]) — a semi-implicit
//!   Euler–Maruyama trajectory simulator with Welch spectral estimation
//!   and an ensemble z-score validator against the closed forms.
//! * **Experiment inversion** ([`experiments`]) — JSON experiment
//!   descriptions, model-validity checks, predicted observables, and
//!   inversion of measured noise floors into `(lambda, r_C)` exclusion
//!   bounds at fixed noise temperature.
//! * **Deterministic output** ([`table`]) — byte-reproducible CSV/JSON
//!   tables.
//!
//! # Conventions
//!
//! * The motion, symmetry and separation axes all point along `+x̂`.
//! * Spectra are two-sided PSDs in angular frequency (`⟨x²⟩ = (1/2π)∫S dω`).
//! * All quantities are SI.

#![warn(missing_docs)]

pub mod coeffs;
pub mod constants;
mod error;
pub mod experiments;
pub mod geometry;
pub mod kernels;
pub mod langevin;
pub mod params;
pub mod quad;
pub mod spectra;
pub mod table;

pub use coeffs::{
    eta, eta_minus_sigma, gamma_csl, mc_integral, omega_coupling, sigma, CollapseCoefficients,
    McTarget, PairCoefficients, MOTION_AXIS,
};
pub use error::{DcslError, Result};
pub use experiments::{
    validity_check, BoundStatus, Datum, ExclusionCurve, Experiment, ExperimentConfig,
    ExperimentKind, ExperimentTarget, LambdaBound, ValidityReport,
};
pub use geometry::{GeometryPair, MassGeometry};
pub use langevin::{
    estimate_psd, pair_reference_psd, simulate_pair, simulate_pair_with, simulate_single,
    simulate_single_with, validate_pair_spectrum, validate_spectrum, PsdEstimate, Trajectory,
    ValidationOptions, ValidationReport,
};
pub use params::{CollapseParams, NoiseTemperature};
pub use spectra::{
    csl_force_psd, dns_cantilever, dns_optomech, dns_relative, system_temperature,
    system_temperature_spectral, temp_shift, total_damping, CavityConfig, MechanicalConfig,
    SpectrumPoint,
};
