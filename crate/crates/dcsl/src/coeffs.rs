//! Collapse coefficients of the dissipative model for rigid bodies and
//! pairs of bodies.
//!
//! After rescaling momenta to `u = Q s / ħ` with `s = r_c (1 + chi)`, every
//! coefficient is a Gaussian-weighted moment of the squared form factor
//! with the master prefactor `c0 = nu² / (8 π³ s⁵)`:
//!
//! ```text
//! eta   = c0 ∫ d³u |μ̃(ħu/s)|² e^{-u²} u_x²                   [1/(m² s)]
//! sigma = c0 ∫ d³u |μ̃(ħu/s)|² e^{-u²} u_x² cos(κ u_x)        [1/(m² s)]
//! omega = c0 (s/ħ) ∫ d³u |μ̃|² e^{-u²} u_x sin(κ u_x)         [1/(kg m³)]
//! ```
//!
//! with `κ = R12 / s` the scaled pair separation. `eta` is the positional
//! diffusion rate of a single body; `sigma` and `omega` are the correlated
//! diffusion and static-force couplings of a pair read out in its relative
//! coordinate. The symmetry of each supported shape reduces the 3-D
//! integral to closed forms or to one-dimensional quadratures (see
//! [`crate::kernels`]); an importance-sampled Monte Carlo estimator of the
//! raw 3-D integral is provided as an independent cross-check.
//!
//! Derived quantities:
//!
//! * `gamma_csl = eta · 4 r_c² m0 chi (1+chi) / m` — collapse-induced
//!   velocity damping (1/s);
//! * `varkappa = gamma_csl / (2 eta ħ) = varkappa_m / m` — dissipative
//!   momentum coefficient (s/kg), with the mass-free invariant
//!   `varkappa_m = ħ (1+chi) / (4 k_B T_csl)` (s).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::constants::HBAR;
use crate::error::{DcslError, Result};
use crate::geometry::{GeometryPair, MassGeometry};
use crate::kernels::{
    axial_eta, axial_eta_minus_sigma, axial_omega, axial_plain, disc_factor, kernel_b, kernel_d,
    sphere_ff_norm, sphere_radial_eta, SCALED_CUTOFF,
};
use crate::params::CollapseParams;
use crate::quad::{integrate_panels, oscillation_edges, QuadOptions};

/// Motion axis used throughout the crate (see [`crate::geometry`]).
pub const MOTION_AXIS: [f64; 3] = [1.0, 0.0, 0.0];

/// Budget for oscillation-aligned panel edges in the sphere pair
/// quadratures. Beyond this the pair is declared out of the supported
/// range instead of silently degrading accuracy.
const MAX_OSC_EDGES: usize = 2_000_000;

fn coeff_quad_opts(n_edges: usize) -> QuadOptions {
    QuadOptions { rel_tol: 1e-12, abs_floor: 1e-300, max_panels: n_edges + 50_000 }
}

/// Single-body collapse coefficients along the motion axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollapseCoefficients {
    /// Positional diffusion rate `eta`, 1/(m²·s).
    pub eta: f64,
    /// Collapse-induced damping `gamma_csl = eta · gamma'(m)`, 1/s, for
    /// the geometry's own mass.
    pub gamma_csl: f64,
    /// Dissipative momentum coefficient `varkappa = varkappa_m / m`, s/kg,
    /// for the geometry's own mass (finite even when `eta = 0`).
    pub varkappa: f64,
    /// Mass-free invariant `varkappa_m = varkappa · m`, s.
    pub varkappa_m: f64,
    /// Motion axis (unit vector); always +x under this crate's
    /// conventions.
    pub axis: [f64; 3],
}

impl CollapseCoefficients {
    /// Computes all single-body coefficients for `geometry` under
    /// `params`.
    pub fn compute(geometry: &MassGeometry, params: &CollapseParams) -> Result<Self> {
        geometry.validate()?;
        let eta_v = eta(geometry, params)?;
        let mass = geometry.mass();
        let varkappa_m = params.varkappa_m();
        Ok(CollapseCoefficients {
            eta: eta_v,
            gamma_csl: eta_v * params.gamma_prime(mass),
            varkappa: varkappa_m / mass,
            varkappa_m,
            axis: MOTION_AXIS,
        })
    }
}

/// Pair collapse coefficients in the relative coordinate along +x.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairCoefficients {
    /// Single-body diffusion rate `eta` of either body, 1/(m²·s).
    pub eta: f64,
    /// Cross-correlation coefficient `sigma`, 1/(m²·s); `|sigma| ≤ eta`
    /// is not guaranteed in general but `eta − sigma ≥ 0` and
    /// `eta + sigma ≥ 0` always hold.
    pub sigma: f64,
    /// The difference `eta − sigma ≥ 0`, evaluated in a cancellation-free
    /// form (this is the combination every relative-coordinate observable
    /// uses).
    pub eta_minus_sigma: f64,
    /// Static collapse-force coupling `omega`, 1/(kg·m³); odd in the
    /// separation.
    pub omega_coupling: f64,
    /// Dissipative momentum coefficient for one body of the pair, s/kg.
    pub varkappa: f64,
    /// Mass-free invariant `varkappa_m`, s.
    pub varkappa_m: f64,
    /// Motion/separation axis; always +x.
    pub axis: [f64; 3],
}

impl PairCoefficients {
    /// Computes all pair coefficients for `pair` under `params`.
    pub fn compute(pair: &GeometryPair, params: &CollapseParams) -> Result<Self> {
        pair.validate()?;
        let eta_v = eta(&pair.base, params)?;
        let diff = eta_minus_sigma(pair, params)?;
        let omega = omega_coupling(pair, params)?;
        let mass = pair.base.mass();
        let varkappa_m = params.varkappa_m();
        Ok(PairCoefficients {
            eta: eta_v,
            sigma: eta_v - diff,
            eta_minus_sigma: diff,
            omega_coupling: omega,
            varkappa: varkappa_m / mass,
            varkappa_m,
            axis: MOTION_AXIS,
        })
    }

    /// Diffusion matrix of the pair in the (body 1, body 2) basis:
    /// `[[eta, sigma], [sigma, eta]]`.
    pub fn k_matrix(&self) -> [[f64; 2]; 2] {
        [[self.eta, self.sigma], [self.sigma, self.eta]]
    }
}

/// Positional diffusion rate `eta` for a single body, 1/(m²·s).
pub fn eta(geometry: &MassGeometry, params: &CollapseParams) -> Result<f64> {
    geometry.validate()?;
    let s = params.scaled_length();
    let c0 = params.master_prefactor();
    let mass = geometry.mass();
    let m2 = mass * mass;
    match geometry {
        MassGeometry::Point { .. } => {
            // Closed form: λ (M/m0)² / (2 r_c² (1+chi)⁵).
            let chi = params.chi();
            let n = geometry.nucleon_count();
            Ok(params.lambda * n * n / (2.0 * params.r_c * params.r_c * (1.0 + chi).powi(5)))
        }
        MassGeometry::Sphere { radius_m, .. } => {
            let a = radius_m / s;
            Ok(c0 * m2 * (4.0 * std::f64::consts::PI / 3.0) * sphere_radial_eta(a))
        }
        MassGeometry::Cylinder { radius_m, length_m, .. } => {
            let alpha = radius_m / s;
            let beta = length_m / (2.0 * s);
            Ok(c0 * m2 * 2.0 * std::f64::consts::PI * disc_factor(alpha) * axial_eta(beta))
        }
        MassGeometry::Cuboid { sides_m, .. } => {
            let b = [sides_m[0] / (2.0 * s), sides_m[1] / (2.0 * s), sides_m[2] / (2.0 * s)];
            Ok(c0 * m2 * axial_eta(b[0]) * axial_plain(b[1]) * axial_plain(b[2]))
        }
    }
}

/// Collapse-induced damping rate `gamma_csl` for a single body, 1/s.
pub fn gamma_csl(geometry: &MassGeometry, params: &CollapseParams) -> Result<f64> {
    Ok(eta(geometry, params)? * params.gamma_prime(geometry.mass()))
}

/// Radial sphere pair integral `∫ u^pow ff²(au) e^{-u²} K(κu) du` with an
/// oscillation-aware panelisation.
fn sphere_pair_radial<K: Fn(f64) -> f64>(
    a: f64,
    kappa: f64,
    pow: i32,
    kernel: K,
) -> Result<f64> {
    let freq = 2.0 * a + kappa + 1.0;
    let edges = oscillation_edges(SCALED_CUTOFF, freq, MAX_OSC_EDGES)?;
    let opts = coeff_quad_opts(edges.len());
    let r = integrate_panels(
        |u| {
            let ff = sphere_ff_norm(a * u);
            u.powi(pow) * ff * ff * (-u * u).exp() * kernel(kappa * u)
        },
        &edges,
        &opts,
    )?;
    Ok(r.value)
}

/// Pair cross-correlation coefficient `sigma`, 1/(m²·s).
///
/// Requires the pair separation to lie along the body/motion axis (+x),
/// which [`GeometryPair`] guarantees by construction.
pub fn sigma(pair: &GeometryPair, params: &CollapseParams) -> Result<f64> {
    Ok(eta(&pair.base, params)? - eta_minus_sigma(pair, params)?)
}

/// The positive combination `eta − sigma ≥ 0`, 1/(m²·s), evaluated from
/// cancellation-free positive-integrand forms.
pub fn eta_minus_sigma(pair: &GeometryPair, params: &CollapseParams) -> Result<f64> {
    pair.validate()?;
    let s = params.scaled_length();
    let c0 = params.master_prefactor();
    let mass = pair.base.mass();
    let m2 = mass * mass;
    let kappa = pair.r12_m / s;
    match &pair.base {
        MassGeometry::Point { .. } => {
            // eta · [ (1 − e^{-κ²/4}) + (κ²/2) e^{-κ²/4} ], all terms ≥ 0.
            let eta_v = eta(&pair.base, params)?;
            let quarter = 0.25 * kappa * kappa;
            Ok(eta_v * ((-libm::expm1(-quarter)) + 2.0 * quarter * (-quarter).exp()))
        }
        MassGeometry::Sphere { radius_m, .. } => {
            let a = radius_m / s;
            let integral = sphere_pair_radial(a, kappa, 4, kernel_d)?;
            Ok(c0 * m2 * 2.0 * std::f64::consts::PI * integral)
        }
        MassGeometry::Cylinder { radius_m, length_m, .. } => {
            let alpha = radius_m / s;
            let beta = length_m / (2.0 * s);
            Ok(c0
                * m2
                * 2.0
                * std::f64::consts::PI
                * disc_factor(alpha)
                * axial_eta_minus_sigma(beta, kappa))
        }
        MassGeometry::Cuboid { sides_m, .. } => {
            let b = [sides_m[0] / (2.0 * s), sides_m[1] / (2.0 * s), sides_m[2] / (2.0 * s)];
            Ok(c0
                * m2
                * axial_eta_minus_sigma(b[0], kappa)
                * axial_plain(b[1])
                * axial_plain(b[2]))
        }
    }
}

/// Static collapse-force coupling `omega`, 1/(kg·m³); odd in the
/// separation and zero at `R12 = 0`.
pub fn omega_coupling(pair: &GeometryPair, params: &CollapseParams) -> Result<f64> {
    pair.validate()?;
    let s = params.scaled_length();
    let c0 = params.master_prefactor();
    let mass = pair.base.mass();
    let m2 = mass * mass;
    let kappa = pair.r12_m / s;
    if kappa == 0.0 {
        return Ok(0.0);
    }
    match &pair.base {
        MassGeometry::Point { .. } => {
            let eta_v = eta(&pair.base, params)?;
            Ok(eta_v * (pair.r12_m / HBAR) * (-0.25 * kappa * kappa).exp())
        }
        MassGeometry::Sphere { radius_m, .. } => {
            let a = radius_m / s;
            let integral = sphere_pair_radial(a, kappa, 3, kernel_b)?;
            Ok(c0 * m2 * (s / HBAR) * 2.0 * std::f64::consts::PI * integral)
        }
        MassGeometry::Cylinder { radius_m, length_m, .. } => {
            let alpha = radius_m / s;
            let beta = length_m / (2.0 * s);
            Ok(c0
                * m2
                * (s / HBAR)
                * 2.0
                * std::f64::consts::PI
                * disc_factor(alpha)
                * axial_omega(beta, kappa))
        }
        MassGeometry::Cuboid { sides_m, .. } => {
            let b = [sides_m[0] / (2.0 * s), sides_m[1] / (2.0 * s), sides_m[2] / (2.0 * s)];
            Ok(c0
                * m2
                * (s / HBAR)
                * axial_omega(b[0], kappa)
                * axial_plain(b[1])
                * axial_plain(b[2]))
        }
    }
}

/// Which scaled 3-D integral the Monte Carlo estimator should target.
#[derive(Debug, Clone, Copy)]
pub enum McTarget<'a> {
    /// Single-body `eta` of the given geometry.
    Eta(&'a MassGeometry),
    /// Pair `sigma`.
    Sigma(&'a GeometryPair),
    /// Pair `omega`.
    OmegaCoupling(&'a GeometryPair),
}

/// Importance-sampled Monte Carlo estimate of a collapse coefficient.
///
/// Draws `u ~ N(0, I/2)` (density `π^{-3/2} e^{-u²}`), so the Gaussian
/// factor of the integrand is absorbed into the sampler and the weight is
/// the remaining bounded profile. Returns `(estimate, standard_error)` in
/// the same units as the deterministic routine it cross-checks.
///
/// Deterministic for a fixed seed independently of the number of worker
/// threads: samples are generated in fixed-size chunks on independent,
/// chunk-indexed RNG streams and reduced pairwise in chunk order.
pub fn mc_integral(
    target: McTarget<'_>,
    params: &CollapseParams,
    samples: u64,
    seed: u64,
) -> Result<(f64, f64)> {
    const MIN_SAMPLES: u64 = 10_000;
    const CHUNK: u64 = 1 << 16;
    if samples < MIN_SAMPLES {
        return Err(DcslError::InvalidConfig(format!(
            "Monte Carlo estimator needs at least {MIN_SAMPLES} samples, got {samples}"
        )));
    }

    let s = params.scaled_length();
    let c0 = params.master_prefactor();
    let (geometry, kappa, prefactor): (&MassGeometry, f64, f64) = match target {
        McTarget::Eta(g) => {
            g.validate()?;
            let m2 = g.mass() * g.mass();
            (g, 0.0, c0 * m2 * std::f64::consts::PI.powf(1.5))
        }
        McTarget::Sigma(p) => {
            p.validate()?;
            let m2 = p.base.mass() * p.base.mass();
            (&p.base, p.r12_m / s, c0 * m2 * std::f64::consts::PI.powf(1.5))
        }
        McTarget::OmegaCoupling(p) => {
            p.validate()?;
            let m2 = p.base.mass() * p.base.mass();
            (&p.base, p.r12_m / s, c0 * m2 * std::f64::consts::PI.powf(1.5) * (s / HBAR))
        }
    };

    let weight = |u: [f64; 3]| -> f64 {
        let profile_sq = geometry.scaled_profile_sq(u, s);
        match target {
            McTarget::Eta(_) => profile_sq * u[0] * u[0],
            McTarget::Sigma(_) => profile_sq * u[0] * u[0] * (kappa * u[0]).cos(),
            McTarget::OmegaCoupling(_) => profile_sq * u[0] * (kappa * u[0]).sin(),
        }
    };

    let n_chunks = samples.div_ceil(CHUNK);
    let partials: Vec<(f64, f64)> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let count = CHUNK.min(samples - chunk * CHUNK);
            let scale = std::f64::consts::FRAC_1_SQRT_2;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let u = [
                    scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng),
                    scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng),
                    scale * <StandardNormal as Distribution<f64>>::sample(&StandardNormal, &mut rng),
                ];
                let w = weight(u);
                sum += w;
                sum_sq += w * w;
            }
            (sum, sum_sq)
        })
        .collect();

    fn pairwise(parts: &[(f64, f64)]) -> (f64, f64) {
        match parts.len() {
            0 => (0.0, 0.0),
            1 => parts[0],
            n => {
                let (lo, hi) = parts.split_at(n / 2);
                let a = pairwise(lo);
                let b = pairwise(hi);
                (a.0 + b.0, a.1 + b.1)
            }
        }
    }
    let (sum, sum_sq) = pairwise(&partials);

    let n = samples as f64;
    let mean = sum / n;
    let var = ((sum_sq / n - mean * mean).max(0.0)) * n / (n - 1.0);
    let se = (var / n).sqrt();
    Ok((prefactor * mean, prefactor * se))
}
