//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// jΩ coincides (numerically) with a pole of the model.
    #[error("resolvent is singular at omega = {omega} rad/s")]
    SingularResolvent { omega: f64 },

    /// Iterative eigenvalue computation hit its iteration cap.
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,

    /// Matrix failed the Hermitian symmetry tolerance.
    #[error("matrix is not Hermitian within tolerance")]
    NotHermitian,

    /// Invalid frequency range or grid request.
    #[error("bad frequency range: {0}")]
    BadRange(String),

    /// Parameter set violates a documented invariant.
    #[error("bad parameters: {0}")]
    BadParams(String),

    /// Operating point makes a device model degenerate (zero denominator).
    #[error("singular operating point")]
    SingularOperatingPoint,

    /// Load sensitivity matrix is singular.
    #[error("load sensitivity matrix is singular")]
    SingularLoad,

    /// Quiescent voltage magnitude is zero; interface matrices not invertible.
    #[error("degenerate operating-point voltage (vD0 = vQ0 = 0)")]
    DegenerateVoltage,

    /// Feedthrough is singular or too ill-conditioned to invert.
    #[error("feedthrough matrix is singular; inverse system is improper")]
    ImproperInverse,

    /// Requested Q-V extraction exceeds what the device can export.
    #[error("requested k_qv^c exceeds available margin ({available})")]
    InsufficientKqv { available: f64 },

    /// A sweep grid point falls on (or too close to) an imaginary-axis pole.
    #[error("grid point at omega = {omega} rad/s hits an axis pole")]
    GridHitsPole { omega: f64 },

    /// Operation requires a rational model, not raw samples.
    #[error("operation requires a rational model, not raw frequency samples")]
    NotRational,

    /// Least-squares system was rank deficient.
    #[error("least-squares system is ill-conditioned")]
    IllConditioned,

    /// Pole or residue set is not closed under complex conjugation.
    #[error("pole/residue set is not closed under conjugation")]
    ConjugationViolation,

    /// Network graph is not connected.
    #[error("network graph is not connected")]
    DisconnectedNetwork,

    /// Referenced bus id does not exist in the network.
    #[error("unknown bus id {0}")]
    UnknownBus(u32),

    /// Matrix expected to be symmetric is not.
    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv error: {0}")]
    Csv(String),
}

pub type Result<T> = std::result::Result<T, Error>;
