//! Stochastic-trajectory validation: determinism of the integrators,
//! normalisation of the Welch estimator, equipartition of the thermal
//! integrator, and a dual-reference spectral control showing that the
//! ensemble z-test accepts the true spectrum and decisively rejects a
//! wrong one.

use dcsl::{
    dns_cantilever, estimate_psd, simulate_pair, simulate_single, simulate_single_with,
    validate_pair_spectrum, validate_spectrum, CollapseCoefficients, CollapseParams,
    GeometryPair, MassGeometry, MechanicalConfig, NoiseTemperature, PairCoefficients,
    ValidationOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

const TWO_PI: f64 = std::f64::consts::TAU;
const K_B: f64 = 1.380649e-23;

fn desk_mech() -> MechanicalConfig {
    MechanicalConfig { m: 1e-12, omega0: TWO_PI * 100.0, gamma_m: 6.283, t_env: 300.0 }
}

fn desk_coeffs(lambda: f64) -> CollapseCoefficients {
    let params = CollapseParams::new(lambda, 1e-7, NoiseTemperature::Finite(1.0)).unwrap();
    CollapseCoefficients::compute(&MassGeometry::Point { mass_kg: 1e-12 }, &params).unwrap()
}

#[test]
fn single_body_integration_is_bitwise_deterministic() {
    let mech = desk_mech();
    let coeffs = desk_coeffs(8.6e-10);
    let a = simulate_single(&mech, &coeffs, 2.1, 2e-5, 99).unwrap();
    let b = simulate_single(&mech, &coeffs, 2.1, 2e-5, 99).unwrap();
    assert_eq!(a.x, b.x);
    assert_eq!(a.p, b.p);
    assert_eq!(a.len(), (2.1f64 / 2e-5).ceil() as usize + 1);

    // A different stream of the same seed is an independent realisation.
    let c = simulate_single_with(&mech, &coeffs, 2.1, 2e-5, 99, 1, 0.0, 0.0).unwrap();
    assert_ne!(a.x, c.x);
    // A different seed differs too.
    let d = simulate_single(&mech, &coeffs, 2.1, 2e-5, 100).unwrap();
    assert_ne!(a.x, d.x);
}

#[test]
fn pair_integration_is_bitwise_deterministic() {
    let params = CollapseParams::new(5e-9, 1e-7, NoiseTemperature::Finite(0.1)).unwrap();
    let body = MassGeometry::Cuboid {
        sides_m: [2e-7, 3e-7, 5e-7],
        density_kg_m3: 1800.0,
        axis_unit: [1.0, 0.0, 0.0],
    };
    let mass = body.mass();
    let pair = PairCoefficients::compute(&GeometryPair::new(body, 4e-7).unwrap(), &params).unwrap();
    let mech = MechanicalConfig { m: mass, omega0: TWO_PI * 900.0, gamma_m: 113.0, t_env: 4.2 };
    let a = simulate_pair(&mech, &pair, 0.3, 3e-6, 5).unwrap();
    let b = simulate_pair(&mech, &pair, 0.3, 3e-6, 5).unwrap();
    assert_eq!(a.x, b.x);
    assert_eq!(a.p, b.p);
    assert!(a.x.iter().all(|v| v.is_finite()));
}

/// A unit sine sampled on an exact Welch bin must peak on that bin and
/// carry total power 1/2.
#[test]
fn welch_estimator_locates_and_integrates_a_pure_tone() {
    let n = 65_536usize;
    let dt = 1e-3;
    let segment = 8192usize;
    let k_tone = 512usize;
    let omega_s = TWO_PI * k_tone as f64 / (segment as f64 * dt);
    let x: Vec<f64> = (0..n).map(|i| (omega_s * i as f64 * dt).sin()).collect();
    let psd = estimate_psd(&x, dt, segment).unwrap();
    assert!(psd.n_segments >= 8);

    let peak = psd
        .values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(k, _)| k)
        .unwrap();
    assert_eq!(peak, k_tone);

    // Variance recovered from the two-sided PSD over the full axis:
    // sum S_k with double weight on interior bins, divided by N dt.
    let interior: f64 = psd.values[1..psd.values.len() - 1].iter().sum();
    let total = psd.values[0] + 2.0 * interior + psd.values[psd.values.len() - 1];
    let variance = total / (segment as f64 * dt);
    assert!(
        (variance - 0.5).abs() < 0.01,
        "sine variance from the PSD: {variance}, expected 0.5"
    );
}

/// White Gaussian noise of variance sigma² must read a flat two-sided PSD
/// of sigma²·dt in the estimator's normalisation.
#[test]
fn welch_estimator_normalises_white_noise_correctly() {
    let mut rng = ChaCha8Rng::seed_from_u64(314159);
    let sigma = 2.5e-3f64;
    let dt = 0.01;
    let x: Vec<f64> =
        (0..300_000).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect();
    let psd = estimate_psd(&x, dt, 4096).unwrap();
    let expected = sigma * sigma * dt;
    // Per-segment mean removal deliberately nulls the DC bin and biases
    // its immediate neighbour; judge the level from bin 2 upward.
    let kept = &psd.values[2..];
    let mean = kept.iter().sum::<f64>() / kept.len() as f64;
    assert!(
        (mean / expected - 1.0).abs() < 0.02,
        "white-noise level: mean {mean:e} vs expected {expected:e}"
    );
    for (k, v) in kept.iter().enumerate() {
        let r = v / expected;
        assert!((0.4..2.0).contains(&r), "bin {} reads {r} of the white level", k + 2);
    }
}

/// Thermal-only single trajectory: the time-averaged position variance
/// must satisfy equipartition, <x²> = k_B T / (m ω0²).
#[test]
fn thermal_trajectory_satisfies_equipartition() {
    let mech = desk_mech();
    let coeffs = desk_coeffs(0.0);
    let traj = simulate_single(&mech, &coeffs, 200.0, 2e-5, 2718).unwrap();
    let skip = (5.0 / traj.dt) as usize; // discard a 5 s transient
    let tail = &traj.x[skip..];
    let mean = tail.iter().sum::<f64>() / tail.len() as f64;
    let var = tail.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / tail.len() as f64;
    let expected = K_B * mech.t_env / (mech.m * mech.omega0 * mech.omega0);
    assert!(
        (var / expected - 1.0).abs() < 0.15,
        "equipartition: <x²> = {var:e}, expected {expected:e} (ratio {})",
        var / expected
    );
}

fn max_abs_z(band: &[Vec<f64>], reference: &[f64]) -> f64 {
    let n_traj = band.len() as f64;
    let mut worst = 0.0f64;
    for (j, &s_ref) in reference.iter().enumerate() {
        let mean = band.iter().map(|v| v[j]).sum::<f64>() / n_traj;
        let var =
            band.iter().map(|v| (v[j] - mean) * (v[j] - mean)).sum::<f64>() / (n_traj - 1.0);
        let se = (var / n_traj).sqrt();
        if se > 0.0 {
            worst = worst.max(((mean - s_ref) / se).abs());
        }
    }
    worst
}

/// Dual-reference control: an ensemble of collapse-driven trajectories is
/// z-tested per frequency bin against (a) the matching closed-form
/// spectrum, which must be accepted, and (b) the spectrum with the
/// collapse terms removed, which must be rejected by a wide margin. The
/// collapse rate is tuned so the collapse damping roughly equals the
/// intrinsic damping (a ~2x distortion of the resonance).
#[test]
fn ensemble_z_test_accepts_the_true_spectrum_and_rejects_a_wrong_one() {
    let mech = desk_mech();
    let coeffs = desk_coeffs(8.6e-10);
    let gamma_csl = coeffs.gamma_csl;
    assert!(
        (0.5..2.0).contains(&(gamma_csl / mech.gamma_m)),
        "control premise: collapse damping comparable to intrinsic, got {gamma_csl}"
    );

    let n_traj = 24u64;
    let dt = 2e-5;
    let duration = 26.0;
    let transient = 2.0;
    let segment = 1usize << 18;
    let n_skip = (transient / dt) as usize;

    let band: Vec<Vec<f64>> = (0..n_traj)
        .map(|stream| {
            let traj =
                simulate_single_with(&mech, &coeffs, duration, dt, 20_260_825, stream, 0.0, 0.0)
                    .unwrap();
            estimate_psd(&traj.x[n_skip..], dt, segment).unwrap().values
        })
        .collect();

    let bin = TWO_PI / (segment as f64 * dt);
    let k_lo = (0.5 * mech.omega0 / bin).ceil() as usize;
    let k_hi = (2.0 * mech.omega0 / bin).floor() as usize;
    let band: Vec<Vec<f64>> = band.into_iter().map(|v| v[k_lo..=k_hi].to_vec()).collect();
    let omegas: Vec<f64> = (k_lo..=k_hi).map(|k| k as f64 * bin).collect();

    let truth: Vec<f64> =
        omegas.iter().map(|&w| dns_cantilever(w, &mech, &coeffs).unwrap()).collect();
    let z_true = max_abs_z(&band, &truth);
    assert!(
        z_true < 6.0,
        "the correct reference must be accepted: max |z| = {z_true:.2} over {} bins",
        omegas.len()
    );

    let no_collapse = desk_coeffs(0.0);
    let wrong: Vec<f64> =
        omegas.iter().map(|&w| dns_cantilever(w, &mech, &no_collapse).unwrap()).collect();
    let z_wrong = max_abs_z(&band, &wrong);
    assert!(
        z_wrong > 8.0,
        "the collapse-free reference must be rejected: max |z| = {z_wrong:.2}"
    );
}

/// End-to-end run of the packaged single-body validator on a thermal
/// (no-collapse) mode.
#[test]
fn packaged_validator_passes_on_a_thermal_mode() {
    let mech = MechanicalConfig { m: 1e-12, omega0: TWO_PI * 100.0, gamma_m: 62.83, t_env: 300.0 };
    let coeffs = desk_coeffs(0.0);
    let mut opts = ValidationOptions::auto(&mech, mech.gamma_m).unwrap();
    opts.n_trajectories = 16;
    let report = validate_spectrum(&mech, &coeffs, 6.0, &opts).unwrap();
    assert!(
        report.pass,
        "thermal validation failed: max |z| = {} at omega = {} over {} bins",
        report.max_abs_z, report.worst_omega, report.n_bins
    );
    assert!(report.n_bins > 50);
    assert_eq!(report.n_trajectories, 16);
    assert!(report.n_segments_per_trajectory >= 8);
    assert_eq!(report.tolerance, 6.0);
}

/// End-to-end run of the packaged pair validator: the collapse noise is
/// the only noise of the pair process, so this is a direct positive
/// control of the pair integrator against twice `dns_relative`.
#[test]
fn packaged_pair_validator_passes_on_the_cuboid_pair() {
    let params = CollapseParams::new(5e-9, 1e-7, NoiseTemperature::Finite(0.1)).unwrap();
    let body = MassGeometry::Cuboid {
        sides_m: [2e-7, 3e-7, 5e-7],
        density_kg_m3: 1800.0,
        axis_unit: [1.0, 0.0, 0.0],
    };
    let mass = body.mass();
    let pair = PairCoefficients::compute(&GeometryPair::new(body, 4e-7).unwrap(), &params).unwrap();
    let mech = MechanicalConfig { m: mass, omega0: TWO_PI * 900.0, gamma_m: 226.0, t_env: 4.2 };
    let gamma_total = mech.gamma_m + 2.0 * pair.eta * 1.054571817e-34 * pair.varkappa_m / mech.m;
    let mut opts = ValidationOptions::auto(&mech, gamma_total).unwrap();
    opts.n_trajectories = 16;
    let report = validate_pair_spectrum(&mech, &pair, 6.0, &opts).unwrap();
    assert!(
        report.pass,
        "pair validation failed: max |z| = {} at omega = {} over {} bins",
        report.max_abs_z, report.worst_omega, report.n_bins
    );
    assert!(report.n_bins > 50);
}

/// Too coarse a step or too short a record must be rejected up front.
#[test]
fn integrator_preconditions_are_enforced() {
    let mech = desk_mech();
    let coeffs = desk_coeffs(0.0);
    // dt above 1/(50 omega0).
    let err = simulate_single(&mech, &coeffs, 10.0, 1e-3, 1).unwrap_err();
    assert!(err.is_config_error(), "coarse dt: {err:?}");
    // Record shorter than 200 periods.
    let err = simulate_single(&mech, &coeffs, 0.5, 2e-5, 1).unwrap_err();
    assert!(err.is_config_error(), "short record: {err:?}");
}
