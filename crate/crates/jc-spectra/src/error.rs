//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors reported by the spectral routines.
///
/// Every variant names the operation contract it enforces; none of them
/// is recoverable by retrying with the same arguments.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("field-mode frequency omega must be positive and finite, got {0}")]
    NonPositiveOmega(f64),

    #[error("parameter {name} must be nonnegative, got {value}")]
    NegativeCoupling { name: &'static str, value: f64 },

    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("Laguerre argument must be nonnegative, got {0}")]
    NegativeArgument(f64),

    #[error("Laguerre asymptotic requires x > 0, got {0}")]
    NonPositiveX(f64),

    #[error("contour quadrature did not reach 1e-9 stability under point doubling (last change {last_change:.3e} at {points} points)")]
    NonConvergedQuadrature { points: usize, last_change: f64 },

    #[error("bisection interval stalled at width {width:.3e} above tolerance {tol:.3e}")]
    BisectionStall { width: f64, tol: f64 },

    #[error("inverse iteration did not reach the residual floor; best residual {residual:.3e} for shift {shift}")]
    NotAnEigenvalue { shift: f64, residual: f64 },

    #[error("dense oracle limited to N <= {max}, got N = {n}")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("spectrum did not converge to tolerance {tol:.3e} below the truncation cap N = {cap}")]
    NoConvergence { tol: f64, cap: usize },

    #[error("windowed sum tail not converged: {0}")]
    TailNotConverged(&'static str),

    #[error("perturbation order {k} above the configured cap {cap}")]
    OrderTooHigh { k: usize, cap: usize },

    #[error("remainder bound requires q < 1, got q = {q:.6}")]
    OutsideConvergentRegime { q: f64 },

    #[error("remainder bound requires order n > 2, got n = {0}")]
    OrderTooLow(usize),

    #[error("index m = {m} is not covered by the finite-horizon m0 certificate (m0 = {m0:?})")]
    M0NotCertified { m: usize, m0: Option<usize> },

    #[error(
        "condition (|1 + (-1)^m P_mm(2g)| < pi/sqrt(3)) not certified within horizon {horizon}"
    )]
    NotFoundWithinHorizon { horizon: usize },

    #[error("RWA closed forms are defined at exact resonance; |omega - omega0| = {detuning:.3e}")]
    NotResonant { detuning: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}
