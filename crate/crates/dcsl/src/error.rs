//! Unified error type for all fallible operations in the crate.
//!
//! Errors are split into two broad families so that callers (in particular
//! the CLI) can map them onto distinct exit codes:
//!
//! * configuration errors — the input was rejected before any numerics ran;
//! * numerical errors — a well-formed computation failed to converge or
//!   produced an unstable/divergent result.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum DcslError {
    /// An input value or combination of values was rejected up front.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// Adaptive quadrature exhausted its refinement budget before reaching
    /// the requested tolerance. Carries the achieved error estimate so the
    /// caller can judge how far off the result is.
    #[error(
        "quadrature did not converge: achieved relative error {achieved:.3e} \
         (requested {requested:.3e}) after {panels} panels"
    )]
    QuadratureNotConverged {
        /// Relative error estimate actually achieved.
        achieved: f64,
        /// Relative tolerance that was requested.
        requested: f64,
        /// Number of panels used when refinement stopped.
        panels: usize,
    },

    /// The effective (shifted) dynamics of a relative coordinate are not
    /// damped: the closed-form spectrum would describe an unstable system.
    #[error("unstable effective dynamics: {0}")]
    UnstableDynamics(String),

    /// A stochastic trajectory left the physically plausible region.
    #[error(
        "trajectory diverged at step {step} (t = {t:.6e} s): |{what}| = \
         {value:.6e} exceeds the stability limit {limit:.6e}"
    )]
    TrajectoryDiverged {
        /// Index of the offending integration step.
        step: usize,
        /// Simulation time at the offending step, seconds.
        t: f64,
        /// Which state variable blew up ("x" or "p").
        what: &'static str,
        /// Magnitude of the offending value.
        value: f64,
        /// Stability limit that was exceeded.
        limit: f64,
    },

    /// Spectral estimation rejected its input (too few segments, bad
    /// segment geometry, ...).
    #[error("spectral estimation: {0}")]
    SpectralEstimation(String),

    /// The resonance integration window of the spectral temperature route
    /// does not fit inside the physical frequency axis.
    #[error("temperature integration window clipped: {0}")]
    WindowClipped(String),
}

impl DcslError {
    /// True when the error denotes bad input rather than a numerical failure.
    ///
    /// The CLI maps configuration errors to exit code 2 and numerical
    /// failures to exit code 3.
    pub fn is_config_error(&self) -> bool {
        matches!(self, DcslError::InvalidConfig(_))
    }
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, DcslError>;
