//! Stochastic trajectory integration of the collapse-driven Langevin
//! equations and a spectral validator that compares ensemble-averaged
//! Welch periodograms against the closed-form spectra of [`crate::spectra`].
//!
//! # Integration scheme
//!
//! Both simulators use the semi-implicit (symplectic) Euler–Maruyama
//! scheme: the momentum is advanced explicitly, then the position uses
//! the updated momentum. For an underdamped oscillator this is essential —
//! the fully explicit scheme adds numerical anti-damping of order
//! `omega0² dt`, which for high-Q modes overwhelms the physical damping at
//! any step size satisfying the usual `omega0 dt ≪ 1` constraint. The
//! semi-implicit map keeps the damping rate exact to `O(gamma dt)` and
//! shifts the resonance only at `O((omega0 dt)²)`.
//!
//! # Noise model
//!
//! For a single body the collapse field exerts a white force of intensity
//! `ħ² eta` (N²·s) together with a position noise of intensity
//! `(varkappa ħ)² eta` from the dissipative part; the two enter through
//! independent Wiener increments, matching the closed-form spectrum
//! [`crate::spectra::dns_cantilever`] exactly in the continuum limit.
//!
//! For the relative coordinate of an identical pair, both increments have
//! variance `2 (eta − sigma) dt`; the resulting full-process displacement
//! PSD is `2 ×` [`crate::spectra::dns_relative`] (that function reports the
//! per-noise-quadrature convention), which [`pair_reference_psd`] wraps.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::coeffs::{CollapseCoefficients, PairCoefficients};
use crate::constants::{HBAR, K_B};
use crate::error::{DcslError, Result};
use crate::spectra::{
    dns_cantilever, dns_relative, pair_effective_dynamics, total_damping, MechanicalConfig,
};

/// Hard cap on the number of stored integration steps (two `f64` vectors).
const MAX_STEPS: usize = 100_000_000;

/// A sampled phase-space trajectory; sample `i` is at time `i * dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Integration time step, s.
    pub dt: f64,
    /// Position samples, m (index 0 is the initial condition).
    pub x: Vec<f64>,
    /// Momentum samples, kg·m/s. Empty when momentum storage was skipped.
    pub p: Vec<f64>,
}

impl Trajectory {
    /// Number of stored samples.
    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// Whether the trajectory holds no samples.
    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// A Welch power-spectral-density estimate (two-sided, angular frequency).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PsdEstimate {
    /// Bin frequencies `2πk/(N dt)`, rad/s, for `k = 0 ..= N/2`.
    pub omega: Vec<f64>,
    /// PSD values, (signal unit)²·s.
    pub values: Vec<f64>,
    /// Number of averaged segments.
    pub n_segments: usize,
    /// Approximate relative standard error per bin,
    /// `1/sqrt(K_eff)` with `K_eff = K/(1 + 1/18)` (Hann, 50% overlap).
    pub rel_se: f64,
}

/// Outcome of an ensemble spectral validation run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    /// `true` when `max_abs_z < tolerance`.
    pub pass: bool,
    /// Largest |z| over the checked bins, where `z` is the deviation of the
    /// ensemble-mean PSD from the closed form in units of the empirical
    /// standard error across trajectories.
    pub max_abs_z: f64,
    /// Frequency of the worst bin, rad/s.
    pub worst_omega: f64,
    /// Number of frequency bins checked (`ω ∈ [ω0/2, 2 ω0]`).
    pub n_bins: usize,
    /// Number of independent trajectories in the ensemble.
    pub n_trajectories: usize,
    /// Welch segments averaged per trajectory.
    pub n_segments_per_trajectory: usize,
    /// The pass/fail threshold on |z|.
    pub tolerance: f64,
}

fn check_time_stepping(omega0: f64, rate: f64, duration: f64, dt: f64) -> Result<usize> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(DcslError::InvalidConfig(format!("dt must be finite and > 0, got {dt:e}")));
    }
    if !duration.is_finite() || duration <= 0.0 {
        return Err(DcslError::InvalidConfig(format!(
            "duration must be finite and > 0, got {duration:e}"
        )));
    }
    let dt_max = 1.0 / (50.0 * omega0.max(rate));
    if dt > dt_max {
        return Err(DcslError::InvalidConfig(format!(
            "dt = {dt:e} s is too coarse: resolving omega0 = {omega0:e} rad/s \
             and damping {rate:e} 1/s requires dt <= {dt_max:e} s"
        )));
    }
    let min_duration = 200.0 * 2.0 * std::f64::consts::PI / omega0;
    if duration < min_duration {
        return Err(DcslError::InvalidConfig(format!(
            "duration = {duration:e} s is shorter than 200 oscillation \
             periods ({min_duration:e} s); spectral estimates need longer records"
        )));
    }
    let n_steps = (duration / dt).ceil() as usize;
    if n_steps > MAX_STEPS {
        return Err(DcslError::InvalidConfig(format!(
            "duration/dt = {n_steps} steps exceeds the {MAX_STEPS} step cap"
        )));
    }
    Ok(n_steps)
}

fn diverged(
    step: usize,
    dt: f64,
    what: &'static str,
    value: f64,
    limit: f64,
) -> DcslError {
    DcslError::TrajectoryDiverged { step, t: step as f64 * dt, what, value, limit }
}

fn guard_limit(scale: f64) -> f64 {
    if scale > 0.0 {
        1e12 * scale
    } else {
        f64::INFINITY
    }
}

#[allow(clippy::too_many_arguments)]
fn integrate_single(
    mech: &MechanicalConfig,
    coeffs: &CollapseCoefficients,
    duration: f64,
    dt: f64,
    seed: u64,
    stream: u64,
    x0: f64,
    p0: f64,
    keep_p: bool,
) -> Result<Trajectory> {
    mech.validate()?;
    let m = mech.m;
    let omega0 = mech.omega0;
    let gamma = total_damping(mech, coeffs);
    let n_steps = check_time_stepping(omega0, gamma, duration, dt)?;

    let km = coeffs.varkappa_m;
    let varkappa = km / m;
    // Per-step noise amplitudes.
    let s_collapse = (coeffs.eta * dt).sqrt();
    let s_thermal = (2.0 * m * mech.gamma_m * K_B * mech.t_env * dt).sqrt();

    // Divergence guard: 1e12 × the analytic stationary spread (thermal +
    // collapse), or the diffusive spread when undamped.
    let w0sq = omega0 * omega0;
    let var_collapse = if gamma > 0.0 {
        HBAR * HBAR * coeffs.eta / (2.0 * m * m * gamma)
            * ((1.0 + km * km * gamma * gamma) / w0sq + km * km)
    } else {
        HBAR * HBAR * coeffs.eta * duration / (m * m * w0sq)
    };
    let x_rms = (K_B * mech.t_env / (m * w0sq) + var_collapse).sqrt();
    let limit_x = guard_limit(x_rms + x0.abs());
    let limit_p = guard_limit(m * omega0 * x_rms + p0.abs());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);

    let mut xs = Vec::with_capacity(n_steps + 1);
    let mut ps = if keep_p { Vec::with_capacity(n_steps + 1) } else { Vec::new() };
    let mut x = x0;
    let mut p = p0;
    xs.push(x);
    if keep_p {
        ps.push(p);
    }
    for step in 0..n_steps {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        let z3: f64 = rng.sample(StandardNormal);
        // Semi-implicit Euler–Maruyama: p first, then x with the new p.
        p += (-m * w0sq * x - gamma * p) * dt + s_thermal * z3 - HBAR * s_collapse * z2;
        x += p / m * dt - varkappa * HBAR * s_collapse * z1;
        if !x.is_finite() || x.abs() > limit_x {
            return Err(diverged(step + 1, dt, "position", x, limit_x));
        }
        if !p.is_finite() || p.abs() > limit_p {
            return Err(diverged(step + 1, dt, "momentum", p, limit_p));
        }
        xs.push(x);
        if keep_p {
            ps.push(p);
        }
    }
    Ok(Trajectory { dt, x: xs, p: ps })
}

/// Integrates the single-body collapse Langevin equations from the origin
/// of phase space. See [`simulate_single_with`] for the scheme and noise
/// model; the RNG uses stream 0 of the seeded counter RNG.
pub fn simulate_single(
    mech: &MechanicalConfig,
    coeffs: &CollapseCoefficients,
    duration: f64,
    dt: f64,
    seed: u64,
) -> Result<Trajectory> {
    integrate_single(mech, coeffs, duration, dt, seed, 0, 0.0, 0.0, true)
}

/// Integrates the single-body collapse Langevin equations
///
/// ```text
/// dx = (p/m) dt − varkappa ħ dW₁ ,
/// dp = (−m ω0² x − γ p) dt + √(2 m γ_m k_B T) dW_th − ħ dW₂ ,
/// ```
///
/// with `Var(dW₁) = Var(dW₂) = eta·dt` independent, `γ = gamma_m +
/// gamma_csl`, from the initial state `(x0, p0)`. `stream` selects an
/// independent noise realisation for the same seed (used for ensembles).
///
/// Preconditions: `dt ≤ 1/(50 max(ω0, γ))` and `duration ≥ 200` periods;
/// violations return [`DcslError::InvalidConfig`]. A trajectory wandering
/// beyond `1e12 ×` its analytic stationary spread aborts with
/// [`DcslError::TrajectoryDiverged`].
#[allow(clippy::too_many_arguments)]
pub fn simulate_single_with(
    mech: &MechanicalConfig,
    coeffs: &CollapseCoefficients,
    duration: f64,
    dt: f64,
    seed: u64,
    stream: u64,
    x0: f64,
    p0: f64,
) -> Result<Trajectory> {
    integrate_single(mech, coeffs, duration, dt, seed, stream, x0, p0, true)
}

#[allow(clippy::too_many_arguments)]
fn integrate_pair(
    mech: &MechanicalConfig,
    pair: &PairCoefficients,
    duration: f64,
    dt: f64,
    seed: u64,
    stream: u64,
    start: Option<(f64, f64)>,
    keep_p: bool,
) -> Result<Trajectory> {
    mech.validate()?;
    let (omega0_tilde_sq, gamma_tilde, gamma) = pair_effective_dynamics(mech, pair)?;
    let m = mech.m;
    let n_steps =
        check_time_stepping(mech.omega0, gamma.max(gamma_tilde), duration, dt)?;

    let km = pair.varkappa_m;
    let varkappa = km / m;
    let sigma_shift = 2.0 * varkappa * pair.sigma * HBAR;
    let drive = 2.0 * varkappa * pair.omega_coupling * HBAR * HBAR;
    let s_noise = (2.0 * pair.eta_minus_sigma * dt).sqrt();
    let w0sq = mech.omega0 * mech.omega0;

    // Stationary mean and spread for the divergence guard and the default
    // initial state.
    let x_eq = drive * gamma / omega0_tilde_sq;
    let p_eq = -0.5 * m * w0sq * x_eq / gamma;
    let var_x = HBAR * HBAR * pair.eta_minus_sigma / (m * m * gamma_tilde)
        * ((1.0 + km * km * gamma * gamma) / omega0_tilde_sq + km * km);
    let x_rms = var_x.sqrt();
    let (x0, p0) = start.unwrap_or((x_eq, p_eq));
    let limit_x = guard_limit(x_rms + x_eq.abs() + x0.abs());
    let limit_p = guard_limit(0.5 * m * omega0_tilde_sq.sqrt() * x_rms + p_eq.abs() + p0.abs());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);

    let mut xs = Vec::with_capacity(n_steps + 1);
    let mut ps = if keep_p { Vec::with_capacity(n_steps + 1) } else { Vec::new() };
    let mut x = x0;
    let mut p = p0;
    xs.push(x);
    if keep_p {
        ps.push(p);
    }
    for step in 0..n_steps {
        let z1: f64 = rng.sample(StandardNormal);
        let z2: f64 = rng.sample(StandardNormal);
        p += (-0.5 * m * w0sq * x - gamma * p) * dt - 0.5 * HBAR * s_noise * z2;
        x += (2.0 * p / m + sigma_shift * x + drive) * dt - varkappa * HBAR * s_noise * z1;
        if !x.is_finite() || x.abs() > limit_x {
            return Err(diverged(step + 1, dt, "position", x, limit_x));
        }
        if !p.is_finite() || p.abs() > limit_p {
            return Err(diverged(step + 1, dt, "momentum", p, limit_p));
        }
        xs.push(x);
        if keep_p {
            ps.push(p);
        }
    }
    Ok(Trajectory { dt, x: xs, p: ps })
}

/// Integrates the relative-coordinate Langevin equations of an identical
/// collapse-correlated pair, starting from the stationary mean. RNG
/// stream 0. See [`simulate_pair_with`].
pub fn simulate_pair(
    mech: &MechanicalConfig,
    pair: &PairCoefficients,
    duration: f64,
    dt: f64,
    seed: u64,
) -> Result<Trajectory> {
    integrate_pair(mech, pair, duration, dt, seed, 0, None, true)
}

/// Integrates the relative-coordinate pair Langevin equations
///
/// ```text
/// dx = (2p/m + 2 varkappa sigma ħ x + 2 varkappa Omega ħ²) dt − varkappa ħ dW_x ,
/// dp = (−(m/2) ω0² x − γ p) dt − (ħ/2) dW_p ,
/// ```
///
/// with independent increments of variance `2 (eta − sigma) dt`. `mech.m`
/// is the mass of one body (the reduced mass is `m/2`). Thermal noise is
/// not included — the pair simulator targets the collapse-specific noise
/// floor. Errors with [`DcslError::UnstableDynamics`] when the correlated
/// dissipative shifts make the mode non-stationary.
#[allow(clippy::too_many_arguments)]
pub fn simulate_pair_with(
    mech: &MechanicalConfig,
    pair: &PairCoefficients,
    duration: f64,
    dt: f64,
    seed: u64,
    stream: u64,
    x0: f64,
    p0: f64,
) -> Result<Trajectory> {
    integrate_pair(mech, pair, duration, dt, seed, stream, Some((x0, p0)), true)
}

/// Full-process displacement PSD of the simulated pair coordinate, m²·s.
///
/// The pair carries **two** independent noise quadratures of intensity
/// `2(eta − sigma)`; [`dns_relative`] reports the per-quadrature
/// convention, so the spectrum of the simulated process is exactly twice
/// that value. This wrapper is the reference the validator and any
/// consumer of simulated pair trajectories should compare against.
pub fn pair_reference_psd(
    omega: f64,
    mech: &MechanicalConfig,
    pair: &PairCoefficients,
) -> Result<f64> {
    Ok(2.0 * dns_relative(omega, mech, pair)?)
}

/// Welch PSD estimate of a uniformly sampled real series: Hann window,
/// 50% segment overlap, per-segment mean removal,
/// `S_k = dt ⟨|FFT(w·x)|²⟩ / Σw²` at `ω_k = 2πk/(N dt)`.
///
/// The estimate is of the **two-sided** PSD (flat white noise of intensity
/// `W` reads `W`). Errors with [`DcslError::SpectralEstimation`] when the
/// series yields fewer than 8 segments.
pub fn estimate_psd(x: &[f64], dt: f64, segment_len: usize) -> Result<PsdEstimate> {
    if !dt.is_finite() || dt <= 0.0 {
        return Err(DcslError::InvalidConfig(format!("dt must be finite and > 0, got {dt:e}")));
    }
    if segment_len < 16 || segment_len % 2 != 0 {
        return Err(DcslError::InvalidConfig(format!(
            "segment_len must be an even number >= 16, got {segment_len}"
        )));
    }
    let hop = segment_len / 2;
    let n_segments = if x.len() >= segment_len { (x.len() - segment_len) / hop + 1 } else { 0 };
    if n_segments < 8 {
        return Err(DcslError::SpectralEstimation(format!(
            "{} samples yield {n_segments} segments of length {segment_len} \
             at 50% overlap; at least 8 are needed for a stable average",
            x.len()
        )));
    }

    let n = segment_len;
    let window: Vec<f64> = (0..n)
        .map(|i| 0.5 * (1.0 - (2.0 * std::f64::consts::PI * i as f64 / n as f64).cos()))
        .collect();
    let wss: f64 = window.iter().map(|w| w * w).sum();

    let fft = FftPlanner::<f64>::new().plan_fft_forward(n);
    let mut buf = vec![Complex::new(0.0, 0.0); n];
    let n_bins = n / 2 + 1;
    let mut acc = vec![0.0f64; n_bins];
    for seg in 0..n_segments {
        let slice = &x[seg * hop..seg * hop + n];
        let mean = slice.iter().sum::<f64>() / n as f64;
        for (b, (&v, &w)) in buf.iter_mut().zip(slice.iter().zip(window.iter())) {
            *b = Complex::new((v - mean) * w, 0.0);
        }
        fft.process(&mut buf);
        for (a, b) in acc.iter_mut().zip(buf.iter().take(n_bins)) {
            *a += b.norm_sqr();
        }
    }

    let scale = dt / (wss * n_segments as f64);
    let values: Vec<f64> = acc.iter().map(|a| a * scale).collect();
    let omega: Vec<f64> =
        (0..n_bins).map(|k| 2.0 * std::f64::consts::PI * k as f64 / (n as f64 * dt)).collect();
    let k_eff = n_segments as f64 / (1.0 + 1.0 / 18.0);
    Ok(PsdEstimate { omega, values, n_segments, rel_se: 1.0 / k_eff.sqrt() })
}

/// Ensemble/record-length parameters for [`validate_spectrum`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValidationOptions {
    /// Independent trajectories (RNG streams) in the ensemble.
    pub n_trajectories: usize,
    /// Base RNG seed shared by all trajectories.
    pub seed: u64,
    /// Simulated duration per trajectory, s (including the transient).
    pub duration: f64,
    /// Integration step, s.
    pub dt: f64,
    /// Welch segment length, samples.
    pub segment_len: usize,
    /// Initial stretch discarded before spectral estimation, s.
    pub transient: f64,
}

impl ValidationOptions {
    /// Sensible defaults for a mode with total damping `gamma_total`:
    /// `dt = 1/(100 max(ω0, γ))`, segment length sized for a bin width of
    /// `γ/16` (so windowing bias at the resonance peak stays well below
    /// the statistical resolution), 8 segments per trajectory, a `10/γ`
    /// transient and a 200-trajectory ensemble.
    pub fn auto(mech: &MechanicalConfig, gamma_total: f64) -> Result<Self> {
        mech.validate()?;
        if !gamma_total.is_finite() || gamma_total <= 0.0 {
            return Err(DcslError::InvalidConfig(format!(
                "spectral validation requires a positive total damping rate, \
                 got {gamma_total:e} 1/s"
            )));
        }
        let dt = 1.0 / (100.0 * mech.omega0.max(gamma_total));
        let samples_per_segment = 32.0 * std::f64::consts::PI / (gamma_total * dt);
        if !(1.0..=6.7e7).contains(&samples_per_segment) {
            return Err(DcslError::InvalidConfig(format!(
                "resolving the linewidth needs ~{samples_per_segment:.3e} \
                 samples per segment; this mode is too narrow for a \
                 trajectory-level validation"
            )));
        }
        let segment_len = (samples_per_segment.ceil() as usize).next_power_of_two();
        let transient = 10.0 / gamma_total;
        // 8 segments at 50% overlap need N(8+1)/2 samples.
        let record = (segment_len * 9 / 2 + 2) as f64 * dt;
        let min_duration = 201.0 * 2.0 * std::f64::consts::PI / mech.omega0;
        let duration = (transient + record).max(transient + min_duration);
        Ok(Self { n_trajectories: 200, seed: 20_260_825, duration, dt, segment_len, transient })
    }
}

fn zscore_scan(
    ensembles: &[Vec<f64>],
    omegas: &[f64],
    reference: &[f64],
) -> (f64, f64, usize) {
    let n_traj = ensembles.len() as f64;
    let mut max_abs_z = 0.0f64;
    let mut worst_omega = f64::NAN;
    let mut n_bins = 0usize;
    for (j, (&omega, &s_ref)) in omegas.iter().zip(reference.iter()).enumerate() {
        let mean = ensembles.iter().map(|v| v[j]).sum::<f64>() / n_traj;
        let var = ensembles.iter().map(|v| (v[j] - mean) * (v[j] - mean)).sum::<f64>()
            / (n_traj - 1.0);
        let se = (var / n_traj).sqrt();
        if se == 0.0 {
            continue;
        }
        n_bins += 1;
        let z = (mean - s_ref) / se;
        if z.abs() > max_abs_z {
            max_abs_z = z.abs();
            worst_omega = omega;
        }
    }
    (max_abs_z, worst_omega, n_bins)
}

fn validate_against<Sim, Reference>(
    mech: &MechanicalConfig,
    tolerance: f64,
    opts: &ValidationOptions,
    simulate_x: Sim,
    reference: Reference,
) -> Result<ValidationReport>
where
    Sim: Fn(u64) -> Result<Vec<f64>> + Sync,
    Reference: Fn(f64) -> Result<f64>,
{
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(DcslError::InvalidConfig(format!(
            "tolerance must be finite and > 0, got {tolerance:e}"
        )));
    }
    if opts.n_trajectories < 8 {
        return Err(DcslError::InvalidConfig(format!(
            "at least 8 trajectories are needed for an empirical standard \
             error, got {}",
            opts.n_trajectories
        )));
    }
    let n_skip = (opts.transient / opts.dt).ceil() as usize;

    // Frequency bins inside the checked band [ω0/2, 2 ω0].
    let n = opts.segment_len as f64;
    let bin = 2.0 * std::f64::consts::PI / (n * opts.dt);
    let k_lo = (0.5 * mech.omega0 / bin).ceil() as usize;
    let k_hi = ((2.0 * mech.omega0 / bin).floor() as usize).min(opts.segment_len / 2);
    if k_lo >= k_hi {
        return Err(DcslError::InvalidConfig(
            "the Welch grid has no bins inside [omega0/2, 2*omega0]; \
             increase segment_len"
                .into(),
        ));
    }

    let band: Vec<Result<Vec<f64>>> = (0..opts.n_trajectories as u64)
        .into_par_iter()
        .map(|stream| {
            let x = simulate_x(stream)?;
            if x.len() <= n_skip {
                return Err(DcslError::SpectralEstimation(
                    "trajectory shorter than the transient to discard".into(),
                ));
            }
            let psd = estimate_psd(&x[n_skip..], opts.dt, opts.segment_len)?;
            Ok(psd.values[k_lo..=k_hi].to_vec())
        })
        .collect();
    let band: Vec<Vec<f64>> = band.into_iter().collect::<Result<_>>()?;

    let omegas: Vec<f64> = (k_lo..=k_hi).map(|k| k as f64 * bin).collect();
    let reference: Vec<f64> = omegas.iter().map(|&w| reference(w)).collect::<Result<_>>()?;
    let (max_abs_z, worst_omega, n_bins) = zscore_scan(&band, &omegas, &reference);
    let n_segments =
        (((opts.duration / opts.dt).ceil() as usize + 1 - n_skip) - opts.segment_len)
            / (opts.segment_len / 2)
            + 1;
    Ok(ValidationReport {
        pass: max_abs_z < tolerance,
        max_abs_z,
        worst_omega,
        n_bins,
        n_trajectories: opts.n_trajectories,
        n_segments_per_trajectory: n_segments,
        tolerance,
    })
}

/// Validates the single-body simulator against [`dns_cantilever`].
///
/// Runs `opts.n_trajectories` independent trajectories, Welch-averages
/// each after discarding the transient, and forms per-bin z-scores of the
/// ensemble mean against the closed-form spectrum using the empirical
/// across-trajectory standard error. Passes when `max |z| < tolerance`
/// over `ω ∈ [ω0/2, 2 ω0]`.
pub fn validate_spectrum(
    mech: &MechanicalConfig,
    coeffs: &CollapseCoefficients,
    tolerance: f64,
    opts: &ValidationOptions,
) -> Result<ValidationReport> {
    mech.validate()?;
    validate_against(
        mech,
        tolerance,
        opts,
        |stream| {
            Ok(integrate_single(
                mech, coeffs, opts.duration, opts.dt, opts.seed, stream, 0.0, 0.0, false,
            )?
            .x)
        },
        |omega| dns_cantilever(omega, mech, coeffs),
    )
}

/// Validates the pair simulator against [`pair_reference_psd`]
/// (twice [`dns_relative`]); otherwise identical to [`validate_spectrum`].
pub fn validate_pair_spectrum(
    mech: &MechanicalConfig,
    pair: &PairCoefficients,
    tolerance: f64,
    opts: &ValidationOptions,
) -> Result<ValidationReport> {
    mech.validate()?;
    validate_against(
        mech,
        tolerance,
        opts,
        |stream| {
            Ok(integrate_pair(
                mech, pair, opts.duration, opts.dt, opts.seed, stream, None, false,
            )?
            .x)
        },
        |omega| pair_reference_psd(omega, mech, pair),
    )
}
