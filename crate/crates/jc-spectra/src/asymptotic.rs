//! Large-index eigenvalue asymptotics, level splittings, and the contrast
//! with the rotating wave approximation.

use crate::error::{Error, Result};
use crate::jacobi::{converged_spectrum_kind, DEFAULT_TRUNCATION_CAP};
use crate::kato::{lambda0, remainder_bound, series_report};
use crate::model::{ModelParams, Variant};

/// Default eigensolver tolerance used by the table builders.
pub const TABLE_SPECTRUM_TOL: f64 = 1e-9;

/// Two leading asymptotic terms: `m omega + 3 omega0/2 - g^2/omega`.
/// The omitted remainder is o(1) in m, with an oscillatory
/// `O(m^(-1/4))` first-order tail.
pub fn asymptotic_eigenvalue(m: usize, params: &ModelParams) -> f64 {
    m as f64 * params.omega() + 1.5 * params.omega0() - params.g() * params.g() / params.omega()
}

/// RWA eigenvalue pair `omega (2m+2) -+ g sqrt(2m+1)` at exact resonance.
pub fn rwa_eigenvalues(m: usize, params: &ModelParams) -> Result<(f64, f64)> {
    let detuning = (params.omega() - params.omega0()).abs();
    if detuning > 1e-12 {
        return Err(Error::NotResonant { detuning });
    }
    let center = params.omega() * (2.0 * m as f64 + 2.0);
    let split = params.g() * (2.0 * m as f64 + 1.0).sqrt();
    Ok((center - split, center + split))
}

/// Splitting of the RWA pair, `2 g sqrt(2m+1)`; grows like `sqrt(2m)`.
pub fn rwa_splitting(m: usize, params: &ModelParams) -> Result<f64> {
    rwa_eigenvalues(m, params).map(|(lo, hi)| hi - lo)
}

/// One row of a splitting table.
#[derive(Debug, Clone)]
pub struct SplittingRow {
    pub m: usize,
    pub lambda_lo: f64,
    pub lambda_hi: f64,
    /// `lambda_hi - lambda_lo`, nonnegative for sorted eigenvalues.
    pub delta: f64,
    /// RWA comparison column; populated only at exact resonance.
    pub rwa_delta: Option<f64>,
}

/// Splittings of the level pairs degenerate at g = 0.
#[derive(Debug, Clone)]
pub struct SplittingTable {
    pub variant: Variant,
    pub params: ModelParams,
    pub rows: Vec<SplittingRow>,
}

/// Exact splittings `Delta_m` from the certified spectrum; H1 pairs the
/// sorted indices `(2m+1, 2m+2)`, H2 pairs `(2m, 2m+1)`.
pub fn splitting_table(
    variant: Variant,
    params: &ModelParams,
    m_max: usize,
) -> Result<SplittingTable> {
    splitting_table_with(
        variant,
        params,
        m_max,
        TABLE_SPECTRUM_TOL,
        DEFAULT_TRUNCATION_CAP,
    )
}

/// As [`splitting_table`] with explicit eigensolver tolerance and cap.
pub fn splitting_table_with(
    variant: Variant,
    params: &ModelParams,
    m_max: usize,
    tol_abs: f64,
    cap: usize,
) -> Result<SplittingTable> {
    let top_index = match variant {
        Variant::H1 => 2 * m_max + 2,
        Variant::H2 => 2 * m_max + 1,
    };
    let spec = converged_spectrum_kind(variant.into(), params, top_index, tol_abs, cap)?;
    let resonant = (params.omega() - params.omega0()).abs() <= 1e-12;
    let rows = (0..=m_max)
        .map(|m| {
            let (i_lo, i_hi) = match variant {
                Variant::H1 => (2 * m + 1, 2 * m + 2),
                Variant::H2 => (2 * m, 2 * m + 1),
            };
            let lambda_lo = spec.eigenvalues[i_lo];
            let lambda_hi = spec.eigenvalues[i_hi];
            let rwa_delta = if resonant {
                Some(2.0 * params.g() * (2.0 * m as f64 + 1.0).sqrt())
            } else {
                None
            };
            SplittingRow {
                m,
                lambda_lo,
                lambda_hi,
                delta: lambda_hi - lambda_lo,
                rwa_delta,
            }
        })
        .collect();
    Ok(SplittingTable {
        variant,
        params: *params,
        rows,
    })
}

/// One row of the exact / series / asymptotic comparison.
#[derive(Debug, Clone)]
pub struct ConvergenceRow {
    pub m: usize,
    pub lambda_exact: f64,
    /// Partial sums of the perturbation series through the requested order.
    pub partial_sums: Vec<f64>,
    /// Remainder bound after the last computed order, where applicable.
    pub remainder_bound: Option<f64>,
    pub asymptotic: f64,
    /// `|lambda_exact - partial_sums.last()|`
    pub resid_series: f64,
    /// `|lambda_exact - asymptotic|`
    pub resid_asymptotic: f64,
}

/// Per-level comparison of the certified spectrum, the series partial sums,
/// the remainder bound, and the two-term asymptotic.
pub fn convergence_table(
    variant: Variant,
    params: &ModelParams,
    m_list: &[usize],
    k_max: usize,
) -> Result<Vec<ConvergenceRow>> {
    convergence_table_with(
        variant,
        params,
        m_list,
        k_max,
        TABLE_SPECTRUM_TOL,
        DEFAULT_TRUNCATION_CAP,
    )
}

/// As [`convergence_table`] with explicit eigensolver tolerance and cap.
pub fn convergence_table_with(
    variant: Variant,
    params: &ModelParams,
    m_list: &[usize],
    k_max: usize,
    tol_abs: f64,
    cap: usize,
) -> Result<Vec<ConvergenceRow>> {
    let &m_top = m_list
        .iter()
        .max()
        .ok_or(Error::InvalidArgument("m list must be nonempty"))?;
    let spec = converged_spectrum_kind(variant.into(), params, m_top, tol_abs, cap)?;
    m_list
        .iter()
        .map(|&m| {
            let lambda_exact = spec.eigenvalues[m];
            let (partial_sums, bound) = if params.omega0() == 0.0 {
                // series degenerates to the exact shifted-oscillator value
                (vec![lambda0(m, params); k_max + 1], None)
            } else {
                let report = series_report(variant, m, params, k_max)?;
                let bound = remainder_bound(k_max, m, params).ok();
                (report.partial_sums, bound)
            };
            let asymptotic = asymptotic_eigenvalue(m, params);
            Ok(ConvergenceRow {
                m,
                lambda_exact,
                resid_series: (lambda_exact - partial_sums[k_max]).abs(),
                resid_asymptotic: (lambda_exact - asymptotic).abs(),
                partial_sums,
                remainder_bound: bound,
                asymptotic,
            })
        })
        .collect()
}
