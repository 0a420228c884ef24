//! Index windows around a target level with a dropped-tail certificate.
//!
//! Overlap rows `P^(m)_i(2g)` decay like a Gaussian in `(i - m)/sqrt(m)`,
//! so sums over the full index set are evaluated over a window
//! `|i - m| <= 8 sqrt(max(m,1)) g/omega + 40` plus the exact low-index
//! block `i < 40`. Orthonormality turns the heuristic into a certificate:
//! `1 - sum(row^2)` bounds the entire dropped mass.

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::special::displaced_overlap;

/// Mass allowed outside the window.
pub(crate) const TAIL_BUDGET: f64 = 1e-12;

/// Low-index block retained in full regardless of the window position.
const LOW_BLOCK: usize = 40;

pub(crate) fn window_halfwidth(m: usize, params: &ModelParams) -> usize {
    let w = 8.0 * (m.max(1) as f64).sqrt() * params.coupling_ratio() + 40.0;
    w.ceil() as usize
}

/// Window indices with the overlap row at doubled coupling and the
/// certified dropped mass.
pub(crate) struct CertifiedWindow {
    /// Sorted global indices: `[0, 40) ∪ [m - W, m + W]`, deduplicated.
    pub indices: Vec<usize>,
    /// Position of `m` inside `indices`.
    pub pos_m: usize,
    /// `P^(m)_i(2g)` for each window index.
    pub row: Vec<f64>,
    /// `max(0, 1 - sum(row^2))`, at most [`TAIL_BUDGET`] after certification.
    #[allow(dead_code)] // read by tests and kept as the certificate value
    pub dropped_mass: f64,
}

pub(crate) fn certified_window(m: usize, params: &ModelParams) -> Result<CertifiedWindow> {
    let g2 = 2.0 * params.g();
    let omega = params.omega();
    let base = window_halfwidth(m, params);
    for attempt in 0..4 {
        let w = base << attempt;
        let lo_main = m.saturating_sub(w);
        let hi = m + w;
        let mut indices: Vec<usize> = (0..LOW_BLOCK.min(lo_main)).collect();
        indices.extend(lo_main..=hi);
        let row: Vec<f64> = indices
            .iter()
            .map(|&i| displaced_overlap(m, i, g2, omega))
            .collect::<Result<_>>()?;
        let mass: f64 = row.iter().map(|v| v * v).sum();
        let dropped = (1.0 - mass).max(0.0);
        if dropped <= TAIL_BUDGET {
            let pos_m = indices.iter().position(|&i| i == m).unwrap();
            return Ok(CertifiedWindow {
                indices,
                pos_m,
                row,
                dropped_mass: dropped,
            });
        }
    }
    Err(Error::TailNotConverged(
        "overlap window kept less than 1 - 1e-12 of the row mass",
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_params;

    #[test]
    fn window_mass_certified_for_typical_levels() {
        for &(m, g) in &[(0usize, 0.5), (25, 0.5), (100, 1.0), (400, 0.5)] {
            let p = validate_params(1.0, 0.2, g).unwrap();
            let w = certified_window(m, &p).unwrap();
            assert!(w.dropped_mass <= TAIL_BUDGET);
            assert_eq!(w.indices[w.pos_m], m);
        }
    }

    #[test]
    fn window_includes_low_block() {
        let p = validate_params(1.0, 0.2, 0.5).unwrap();
        let w = certified_window(400, &p).unwrap();
        for i in 0..40 {
            assert!(w.indices.contains(&i));
        }
        // gap between the low block and the main window
        assert!(!w.indices.contains(&100));
    }
}
