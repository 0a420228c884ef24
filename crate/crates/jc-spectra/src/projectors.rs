//! Parity projectors transformed to the shifted-oscillator eigenbasis.
//!
//! The closed forms `P(1)_km = d_km/2 - (-1)^k P^(m)_k(2g)/2` and
//! `P(2)_km = d_km/2 + (-1)^k P^(m)_k(2g)/2` are checked against the
//! defining parity sums over overlaps at single coupling, and against the
//! operator identities `P(1) = (E - B U(2g))/2`, `[B U(2g)]^2 = E`.

use crate::error::{Error, Result};
use crate::model::{ModelParams, Variant};
use crate::special::displaced_overlap;

/// Which parity projector, in the displaced eigenbasis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectorVariant {
    P1,
    P2,
}

impl From<Variant> for ProjectorVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::H1 => ProjectorVariant::P1,
            Variant::H2 => ProjectorVariant::P2,
        }
    }
}

impl std::fmt::Display for ProjectorVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ProjectorVariant::P1 => write!(f, "p1"),
            ProjectorVariant::P2 => write!(f, "p2"),
        }
    }
}

/// Closed-form element `P(v)_km`; the overlap is taken at doubled coupling.
pub fn projector_element(
    variant: ProjectorVariant,
    k: usize,
    m: usize,
    params: &ModelParams,
) -> Result<f64> {
    let overlap = displaced_overlap(m, k, 2.0 * params.g(), params.omega())?;
    let signed = if k % 2 == 0 { 0.5 } else { -0.5 } * overlap;
    let delta = if k == m { 0.5 } else { 0.0 };
    Ok(match variant {
        ProjectorVariant::P1 => delta - signed,
        ProjectorVariant::P2 => delta + signed,
    })
}

/// Suggested term count for the parity-sum oracle.
pub fn default_parity_terms(k: usize, m: usize) -> usize {
    4 * k.max(m) + 200
}

/// Defining parity sum `sum_(n odd/even) P^(k)_n(g) P^(m)_n(g)` truncated at
/// `n_sum` terms; the independent oracle for [`projector_element`].
pub fn projector_direct_sum(
    variant: ProjectorVariant,
    k: usize,
    m: usize,
    params: &ModelParams,
    n_sum: usize,
) -> Result<f64> {
    let g = params.g();
    let omega = params.omega();
    let start = match variant {
        ProjectorVariant::P1 => 1, // odd oscillator indices
        ProjectorVariant::P2 => 0,
    };
    if n_sum <= start {
        return Err(Error::InvalidArgument(
            "parity sum needs at least one term of its parity",
        ));
    }
    let mut total = 0.0;
    let mut last = 0.0;
    let mut n = start;
    while n < n_sum {
        let term = displaced_overlap(k, n, g, omega)? * displaced_overlap(m, n, g, omega)?;
        total += term;
        last = term;
        n += 2;
    }
    if last.abs() > 1e-12 {
        return Err(Error::TailNotConverged(
            "last retained parity-sum term above 1e-12",
        ));
    }
    Ok(total)
}

/// Max elementwise defect of `(B U(2g))^2 - E` over the `window x window`
/// top-left block, with `B = diag((-1)^k)`.
///
/// Only the two index strips entering the block are materialized; the
/// second strip is the first one reflected through the overlap sign
/// symmetry, so the check exercises it too.
pub fn bu_identity_defect(params: &ModelParams, n_basis: usize, window: usize) -> Result<f64> {
    if window == 0 || window > n_basis / 2 {
        return Err(Error::InvalidArgument(
            "bu identity window must satisfy 0 < window <= n_basis / 2",
        ));
    }
    let g2 = 2.0 * params.g();
    let omega = params.omega();
    // strip[k][j] = P^(j)_k(2g) for k < window, j < n_basis
    let mut strip = vec![0.0_f64; window * n_basis];
    for k in 0..window {
        for j in 0..n_basis {
            strip[k * n_basis + j] = displaced_overlap(j, k, g2, omega)?;
        }
    }
    // (BU)^2_km = (-1)^(k+m) sum_j strip[k][j] strip[m][j]
    let mut defect = 0.0_f64;
    for k in 0..window {
        for m in k..window {
            let dot: f64 = (0..n_basis)
                .map(|j| strip[k * n_basis + j] * strip[m * n_basis + j])
                .sum();
            let sign = if (k + m) % 2 == 0 { 1.0 } else { -1.0 };
            let target = if k == m { 1.0 } else { 0.0 };
            defect = defect.max((sign * dot - target).abs());
        }
    }
    Ok(defect)
}

/// Dense truncation of a transformed projector.
#[derive(Debug, Clone)]
pub struct ProjectorMatrix {
    variant: ProjectorVariant,
    n_basis: usize,
    elements: Vec<f64>,
}

impl ProjectorMatrix {
    pub fn get(&self, k: usize, m: usize) -> f64 {
        self.elements[k * self.n_basis + m]
    }

    pub fn n_basis(&self) -> usize {
        self.n_basis
    }

    pub fn variant(&self) -> ProjectorVariant {
        self.variant
    }

    /// `max |(P P - P)_km|` over the `window x window` top-left block,
    /// summing the inner index over the whole truncation.
    pub fn idempotency_defect(&self, window: usize) -> f64 {
        let n = self.n_basis;
        let w = window.min(n);
        let mut defect = 0.0_f64;
        for k in 0..w {
            for m in 0..w {
                let dot: f64 = (0..n).map(|j| self.get(k, j) * self.get(j, m)).sum();
                defect = defect.max((dot - self.get(k, m)).abs());
            }
        }
        defect
    }
}

/// Materializes the closed-form projector over an `n_basis` truncation.
pub fn projector_matrix(
    variant: ProjectorVariant,
    n_basis: usize,
    params: &ModelParams,
) -> Result<ProjectorMatrix> {
    let mut elements = vec![0.0_f64; n_basis * n_basis];
    for k in 0..n_basis {
        for m in k..n_basis {
            let v = projector_element(variant, k, m, params)?;
            elements[k * n_basis + m] = v;
            elements[m * n_basis + k] = v; // symmetric by the sign relation
        }
    }
    Ok(ProjectorMatrix {
        variant,
        n_basis,
        elements,
    })
}
