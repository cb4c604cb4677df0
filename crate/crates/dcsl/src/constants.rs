//! Physical constants (SI, CODATA 2018) used throughout the crate.

/// Reduced Planck constant, J·s.
pub const HBAR: f64 = 1.054_571_817e-34;

/// Boltzmann constant, J/K (exact by SI definition).
pub const K_B: f64 = 1.380_649e-23;

/// Reference nucleon mass: the unified atomic mass constant, kg.
///
/// Collapse rates are conventionally quoted per nucleon of this mass, so it
/// appears squared in every collapse coefficient.
pub const M0: f64 = 1.660_539_066_60e-27;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_in_expected_ranges() {
        assert!(HBAR > 1.05e-34 && HBAR < 1.06e-34);
        assert!(K_B > 1.38e-23 && K_B < 1.381e-23);
        assert!(M0 > 1.66e-27 && M0 < 1.661e-27);
    }

    #[test]
    fn thermal_length_scale_combination_is_consistent() {
        // ħ²/(8 m0 k_B) sets the scale of the dissipation parameter χ;
        // it should be ~6.06e-20 m²·K.
        let scale = HBAR * HBAR / (8.0 * M0 * K_B);
        assert!((scale / 6.064e-20 - 1.0).abs() < 1e-3, "scale = {scale:e}");
    }
}
