//! Spectral analysis of the Jaynes-Cummings model with the counter-rotating
//! terms kept.
//!
//! The Hamiltonian splits into two invariant subspaces represented by Jacobi
//! matrices `H1`, `H2`, each the shifted oscillator `A0` plus `omega0` times
//! a parity projector. This crate computes:
//!
//! - certified truncated spectra of `H1`, `H2`, `A0` (Sturm bisection with
//!   dimension-doubling certificates, dense Jacobi-rotation oracle);
//! - displaced-oscillator overlaps `P^(m)_n(g)` through generalized Laguerre
//!   polynomials, with a contour-integral quadrature as independent oracle;
//! - the transformed parity projectors and their operator identities;
//! - the perturbation series in `omega0` via the Kato trace formula, its
//!   regularity diagnostics (`sigma_m`, `t_m`, Hardy row sums, the `m0`
//!   certificate), and the geometric remainder bound;
//! - the two-term eigenvalue asymptotic, level splittings, and their
//!   contrast with the rotating wave approximation.

pub mod asymptotic;
pub mod error;
pub mod jacobi;
pub mod kato;
pub mod model;
pub mod projectors;
pub mod special;
mod window;

pub use asymptotic::{
    asymptotic_eigenvalue, convergence_table, convergence_table_with, rwa_eigenvalues,
    rwa_splitting, splitting_table, splitting_table_with, ConvergenceRow, SplittingRow,
    SplittingTable,
};
pub use error::{Error, Result};
pub use jacobi::{
    build_matrix, converged_spectrum, converged_spectrum_kind, dense_eig_oracle, eigenvalues_sturm,
    eigenvector_inverse_iteration, SpectralResult, SymTridiagonal, DEFAULT_TRUNCATION_CAP,
};
pub use kato::{
    composition_count, compositions, find_m0, hardy_diagnostics, kato_correction,
    kato_correction_terms, lambda0, lambda1, lambda2, lambda3, remainder_bound, series_report,
    sigma_m, Composition, HardyDiagnostics, SeriesReport, DEFAULT_ORDER_CAP,
};
pub use model::{
    convergence_threshold, validate_params, MatrixKind, ModelParams, Truncation, Variant,
};
pub use projectors::{
    bu_identity_defect, default_parity_terms, projector_direct_sum, projector_element,
    projector_matrix, ProjectorMatrix, ProjectorVariant,
};
pub use special::{
    displaced_overlap, displaced_overlap_contour, displaced_overlap_contour_detailed, laguerre,
    laguerre_asymptotic, laguerre_envelope, log_factorial, overlap_matrix, ContourOverlap,
    OverlapMatrix,
};
