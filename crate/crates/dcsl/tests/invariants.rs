//! Property-based invariants over the physically sensible parameter box:
//! rates 1e-12..1e-4 1/s, correlation lengths 1e-9..1e-5 m, noise
//! temperatures from 10 nK to 1e12 K plus the non-dissipative limit, and
//! body sizes from 1% to 20x the correlation length (the kernels'
//! supported oscillation budget).

use dcsl::{
    csl_force_psd, dns_cantilever, dns_relative, CollapseCoefficients, CollapseParams, DcslError,
    GeometryPair, MassGeometry, MechanicalConfig, NoiseTemperature, PairCoefficients,
};
use proptest::prelude::*;

const HBAR: f64 = 1.054571817e-34;
const K_B: f64 = 1.380649e-23;

fn params_strategy() -> impl Strategy<Value = CollapseParams> {
    (
        -12.0f64..-4.0,
        -9.0f64..-5.0,
        prop_oneof![Just(None), (-8.0f64..12.0).prop_map(Some)],
    )
        .prop_map(|(l_lambda, l_rc, t)| {
            let t_csl = match t {
                None => NoiseTemperature::Infinite,
                Some(e) => NoiseTemperature::Finite(10f64.powf(e)),
            };
            CollapseParams::new(10f64.powf(l_lambda), 10f64.powf(l_rc), t_csl).unwrap()
        })
}

/// A body whose linear dimensions are `ratio * r_C` with `ratio` inside
/// the kernels' supported envelope.
fn geometry_strategy() -> impl Strategy<Value = (usize, [f64; 3], f64)> {
    (
        0usize..4,
        [0.01f64..20.0, 0.01f64..20.0, 0.01f64..20.0],
        100.0f64..20_000.0,
    )
}

fn build_geometry(kind: usize, ratios: [f64; 3], density: f64, r_c: f64) -> MassGeometry {
    match kind {
        0 => MassGeometry::Point { mass_kg: density * 1e-18 },
        1 => MassGeometry::Sphere { radius_m: ratios[0] * r_c, density_kg_m3: density },
        2 => MassGeometry::Cylinder {
            radius_m: ratios[0] * r_c,
            length_m: 2.0 * ratios[1] * r_c,
            density_kg_m3: density,
            axis_unit: [1.0, 0.0, 0.0],
        },
        _ => MassGeometry::Cuboid {
            sides_m: [2.0 * ratios[0] * r_c, 2.0 * ratios[1] * r_c, 2.0 * ratios[2] * r_c],
            density_kg_m3: density,
            axis_unit: [1.0, 0.0, 0.0],
        },
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn single_body_coefficients_are_finite_and_nonnegative(
        params in params_strategy(),
        (kind, ratios, density) in geometry_strategy(),
    ) {
        let geometry = build_geometry(kind, ratios, density, params.r_c);
        let c = CollapseCoefficients::compute(&geometry, &params).unwrap();
        prop_assert!(c.eta.is_finite() && c.eta >= 0.0, "eta = {:e}", c.eta);
        prop_assert!(c.gamma_csl.is_finite() && c.gamma_csl >= 0.0);
        prop_assert!(c.varkappa_m.is_finite() && c.varkappa_m >= 0.0);
        prop_assert!(c.varkappa.is_finite() && c.varkappa >= 0.0);
        // gamma_csl is exactly the damping-per-rate combination.
        let expect = 2.0 * c.eta * HBAR * c.varkappa_m / geometry.mass();
        if expect > 0.0 {
            prop_assert!((c.gamma_csl / expect - 1.0).abs() < 1e-12);
        } else {
            prop_assert_eq!(c.gamma_csl, 0.0);
        }
    }

    #[test]
    fn the_pair_diffusion_matrix_stays_positive_semidefinite(
        params in params_strategy(),
        (kind, ratios, density) in geometry_strategy(),
        kappa in prop_oneof![Just(0.0f64), 0.0f64..40.0],
    ) {
        let geometry = build_geometry(kind, ratios, density, params.r_c);
        // Scale the separation by the smeared length so the oscillation
        // budget of the sphere quadrature holds for every temperature.
        let s = params.r_c * (1.0 + params.chi());
        let pair = GeometryPair::new(geometry, kappa * s).unwrap();
        let pc = PairCoefficients::compute(&pair, &params).unwrap();

        prop_assert!(pc.eta.is_finite() && pc.eta >= 0.0);
        prop_assert!(pc.sigma.is_finite());
        prop_assert!(pc.omega_coupling.is_finite());
        // Eigenvalues of [[eta, sigma], [sigma, eta]] are eta ± sigma.
        prop_assert!(
            pc.eta_minus_sigma >= 0.0,
            "eta - sigma = {:e} at kappa = {kappa}",
            pc.eta_minus_sigma
        );
        prop_assert!(
            pc.eta + pc.sigma >= -1e-10 * pc.eta,
            "eta + sigma = {:e} at kappa = {kappa}",
            pc.eta + pc.sigma
        );
        // Decomposition consistency (sigma is derived from the
        // cancellation-free difference, so this is exact up to rounding).
        prop_assert!((pc.sigma + pc.eta_minus_sigma - pc.eta).abs() <= 1e-12 * pc.eta.max(1e-300));

        // Coincident bodies: full correlation, no static force.
        if kappa == 0.0 {
            prop_assert!(pc.eta_minus_sigma.abs() <= 1e-12 * pc.eta.max(1e-300));
            prop_assert_eq!(pc.omega_coupling, 0.0);
        }
    }

    #[test]
    fn varkappa_m_matches_its_closed_form(params in params_strategy()) {
        let geometry = MassGeometry::Point { mass_kg: 1e-12 };
        let c = CollapseCoefficients::compute(&geometry, &params).unwrap();
        match params.t_csl {
            NoiseTemperature::Infinite => prop_assert_eq!(c.varkappa_m, 0.0),
            NoiseTemperature::Finite(t) => {
                let expect = HBAR * (1.0 + params.chi()) / (4.0 * K_B * t);
                prop_assert!((c.varkappa_m / expect - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spectra_stay_finite_and_nonnegative_everywhere(
        params in params_strategy(),
        (kind, ratios, density) in geometry_strategy(),
        kappa in 0.0f64..40.0,
        log_omega0 in 0.0f64..6.0,
        log_q in 0.5f64..6.0,
        omega_scale in 0.0f64..10.0,
        t_env in prop_oneof![Just(0.0f64), 1e-3f64..300.0],
    ) {
        let geometry = build_geometry(kind, ratios, density, params.r_c);
        let mass = geometry.mass();
        let omega0 = 10f64.powf(log_omega0);
        let mech = MechanicalConfig {
            m: mass,
            omega0,
            gamma_m: omega0 / 10f64.powf(log_q),
            t_env,
        };
        let omega = omega_scale * omega0;

        let coeffs = CollapseCoefficients::compute(&geometry, &params).unwrap();
        let s_xx = dns_cantilever(omega, &mech, &coeffs).unwrap();
        prop_assert!(s_xx.is_finite() && s_xx >= 0.0, "S_xx = {s_xx:e}");

        let s = params.r_c * (1.0 + params.chi());
        let pair = GeometryPair::new(geometry, kappa * s).unwrap();
        let pc = PairCoefficients::compute(&pair, &params).unwrap();
        let s_ff = csl_force_psd(omega, &mech, &pc).unwrap();
        prop_assert!(s_ff.is_finite() && s_ff >= 0.0, "S_FF = {s_ff:e}");

        // The relative-coordinate spectrum may legitimately refuse when the
        // correlated back-action destabilises the mode; anything else must
        // be a finite, non-negative density.
        match dns_relative(omega, &mech, &pc) {
            Ok(v) => prop_assert!(v.is_finite() && v >= 0.0, "S_rel = {v:e}"),
            Err(DcslError::UnstableDynamics(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error: {e:?}"),
        }
    }
}
