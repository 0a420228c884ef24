//! Truncated Jacobi matrices of the model and their certified spectra.
//!
//! The two invariant-subspace Hamiltonians and the shifted oscillator are
//! symmetric tridiagonal with off-diagonal `g sqrt(k+1)`; eigenvalues come
//! from Sturm-sequence bisection, cross-checked by a dense Jacobi-rotation
//! oracle on small truncations, and certified against truncation error by
//! dimension doubling.

use crate::error::{Error, Result};
use crate::model::{MatrixKind, ModelParams, Truncation, Variant};

/// Symmetric tridiagonal truncation of one of the model operators.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub offdiag: Vec<f64>,
    pub label: MatrixKind,
}

impl SymTridiagonal {
    pub fn n(&self) -> usize {
        self.diag.len()
    }

    /// Row-sum norm; also the scale used by residual tests.
    pub fn norm_inf(&self) -> f64 {
        let n = self.n();
        let mut worst = 0.0_f64;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            worst = worst.max(self.diag[i].abs() + left + right);
        }
        worst
    }

    /// Gershgorin enclosure of the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.n();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 {
                self.offdiag[i - 1].abs()
            } else {
                0.0
            };
            let right = if i + 1 < n {
                self.offdiag[i].abs()
            } else {
                0.0
            };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Matrix-vector product `T v`.
    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut acc = self.diag[i] * v[i];
            if i > 0 {
                acc += self.offdiag[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                acc += self.offdiag[i] * v[i + 1];
            }
            out[i] = acc;
        }
        out
    }

    /// Number of eigenvalues strictly below `x` (Sturm / LDLT pivot count).
    pub fn sturm_count(&self, x: f64) -> usize {
        const PIVOT_GUARD: f64 = 1e-292;
        let n = self.n();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..n {
            let q_safe = if q.abs() < PIVOT_GUARD {
                if q >= 0.0 {
                    PIVOT_GUARD
                } else {
                    -PIVOT_GUARD
                }
            } else {
                q
            };
            let e = self.offdiag[i - 1];
            q = (self.diag[i] - x) - e * e / q_safe;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }
}

/// Builds the truncated matrix for the requested operator.
///
/// Diagonal patterns (k = 0, 1, 2, ...):
/// H1: `omega0 + k omega` (k even), `2 omega0 + k omega` (k odd);
/// H2: the opposite alternation; A0: `omega0 + k omega` throughout.
/// All three share `offdiag[k] = g sqrt(k+1)`.
pub fn build_matrix(kind: MatrixKind, params: &ModelParams, n_basis: usize) -> SymTridiagonal {
    let (omega, omega0, g) = (params.omega(), params.omega0(), params.g());
    let diag = (0..n_basis)
        .map(|k| {
            let base = k as f64 * omega;
            match (kind, k % 2 == 0) {
                (MatrixKind::A0, _) => omega0 + base,
                (MatrixKind::H1, true) | (MatrixKind::H2, false) => omega0 + base,
                (MatrixKind::H1, false) | (MatrixKind::H2, true) => 2.0 * omega0 + base,
            }
        })
        .collect();
    let offdiag = (1..n_basis).map(|k| g * (k as f64).sqrt()).collect();
    SymTridiagonal {
        diag,
        offdiag,
        label: kind,
    }
}

const BISECT_MAX_ITER: usize = 240;

/// Eigenvalues with sorted indices `lo..=hi`, each bracketed by its Sturm
/// count and bisected to `tol_abs` (or machine resolution, whichever is
/// coarser).
pub fn eigenvalues_sturm(
    t: &SymTridiagonal,
    lo_index: usize,
    hi_index: usize,
    tol_abs: f64,
) -> Result<Vec<f64>> {
    let n = t.n();
    if lo_index > hi_index || hi_index >= n {
        return Err(Error::InvalidArgument(
            "eigenvalue index range must satisfy lo <= hi < N",
        ));
    }
    if t.diag
        .iter()
        .chain(t.offdiag.iter())
        .any(|v| !v.is_finite())
    {
        return Err(Error::NonFinite {
            name: "matrix entry",
            value: f64::NAN,
        });
    }
    let (glo, ghi) = t.gershgorin();
    if !(glo.is_finite() && ghi.is_finite()) {
        // Gershgorin arithmetic overflowed; no bracket can shrink
        return Err(Error::BisectionStall {
            width: f64::INFINITY,
            tol: tol_abs,
        });
    }
    let resolution = |a: f64, b: f64| 4.0 * f64::EPSILON * a.abs().max(b.abs()).max(1.0);
    let mut out = Vec::with_capacity(hi_index - lo_index + 1);
    let mut lower_start = glo - 1.0;
    for k in lo_index..=hi_index {
        let mut a = lower_start;
        let mut b = ghi + 1.0;
        for _ in 0..BISECT_MAX_ITER {
            // tolerances below machine resolution are satisfied at resolution
            if b - a <= tol_abs.max(resolution(a, b)) {
                break;
            }
            let mid = 0.5 * a + 0.5 * b;
            if mid <= a || mid >= b {
                break;
            }
            if t.sturm_count(mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        if b - a > tol_abs.max(resolution(a, b)) {
            return Err(Error::BisectionStall {
                width: b - a,
                tol: tol_abs,
            });
        }
        let lambda = 0.5 * (a + b);
        // ascending indices let each search start at the previous eigenvalue
        lower_start = a;
        out.push(lambda);
    }
    Ok(out)
}

/// Spectrum (or partial spectrum) with its convergence certificate.
#[derive(Debug, Clone)]
pub struct SpectralResult {
    /// Ascending eigenvalues for indices `0..=m_guard` of the truncation.
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// Largest index m such that every eigenvalue up to m moved less than
    /// `tol_abs` under the last dimension doubling.
    pub converged_upto: usize,
    pub truncation: Truncation,
}

/// Dense eigensolver by cyclic Jacobi rotations; the brute-force oracle for
/// the Sturm path. Guarded to N <= 64.
pub fn dense_eig_oracle(t: &SymTridiagonal) -> Result<SpectralResult> {
    const MAX_N: usize = 64;
    let n = t.n();
    if n > MAX_N {
        return Err(Error::DimensionTooLarge { n, max: MAX_N });
    }
    if n < 2 {
        return Err(Error::InvalidArgument("dense oracle needs N >= 2"));
    }
    let mut a = vec![0.0_f64; n * n];
    for i in 0..n {
        a[i * n + i] = t.diag[i];
        if i + 1 < n {
            a[i * n + i + 1] = t.offdiag[i];
            a[(i + 1) * n + i] = t.offdiag[i];
        }
    }
    let mut v = vec![0.0_f64; n * n];
    for i in 0..n {
        v[i * n + i] = 1.0;
    }
    let scale: f64 = t.norm_inf().max(f64::MIN_POSITIVE);
    let stop = 1e-15 * scale;
    let mut converged = false;
    for _sweep in 0..60 {
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].abs();
            }
        }
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = 0.5 * (a[q * n + q] - a[p * n + p]) / apq;
                let tt = {
                    let s = theta.signum();
                    let s = if s == 0.0 { 1.0 } else { s };
                    s / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + tt * tt).sqrt();
                let s = tt * c;
                for r in 0..n {
                    let arp = a[r * n + p];
                    let arq = a[r * n + q];
                    a[r * n + p] = c * arp - s * arq;
                    a[r * n + q] = s * arp + c * arq;
                }
                for rcol in 0..n {
                    let apr = a[p * n + rcol];
                    let aqr = a[q * n + rcol];
                    a[p * n + rcol] = c * apr - s * aqr;
                    a[q * n + rcol] = s * apr + c * aqr;
                }
                for r in 0..n {
                    let vrp = v[r * n + p];
                    let vrq = v[r * n + q];
                    v[r * n + p] = c * vrp - s * vrq;
                    v[r * n + q] = s * vrp + c * vrq;
                }
            }
        }
    }
    if !converged {
        // final off-diagonal check; cyclic Jacobi converges quadratically
        let mut off = 0.0_f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += a[p * n + q].abs();
            }
        }
        if off > stop * 10.0 {
            return Err(Error::NoConvergence { tol: stop, cap: 60 });
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].partial_cmp(&a[j * n + j]).unwrap());
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * n + i]).collect();
    let eigenvectors: Vec<Vec<f64>> = order
        .iter()
        .map(|&col| (0..n).map(|r| v[r * n + col]).collect())
        .collect();
    Ok(SpectralResult {
        eigenvalues,
        eigenvectors: Some(eigenvectors),
        converged_upto: n - 1,
        truncation: Truncation {
            n_basis: n,
            m_guard: n - 1,
            tol_abs: 1e-12 * scale,
        },
    })
}

/// Unit eigenvector for an eigenvalue near `lambda` by inverse iteration
/// with a partially pivoted tridiagonal factorization.
pub fn eigenvector_inverse_iteration(t: &SymTridiagonal, lambda: f64) -> Result<Vec<f64>> {
    let n = t.n();
    if n == 0 {
        return Err(Error::InvalidArgument("empty matrix"));
    }
    let scale = t.norm_inf().max(1.0);
    let target = 1e-8 * t.norm_inf().max(f64::MIN_POSITIVE);

    // Factor (T - lambda I) = P L U once; U has two superdiagonals.
    let tiny = f64::EPSILON * scale;
    let mut du = vec![0.0_f64; n]; // U main diagonal
    let mut e1 = vec![0.0_f64; n]; // first superdiagonal
    let mut e2 = vec![0.0_f64; n]; // second superdiagonal
    let mut mul = vec![0.0_f64; n]; // elimination multipliers
    let mut swap = vec![false; n];
    {
        let mut cd = t.diag[0] - lambda;
        let mut ce1 = if n > 1 { t.offdiag[0] } else { 0.0 };
        let mut ce2 = 0.0_f64;
        for i in 0..n.saturating_sub(1) {
            let sub = t.offdiag[i];
            let nd = t.diag[i + 1] - lambda;
            let ne1 = if i + 2 < n { t.offdiag[i + 1] } else { 0.0 };
            if sub.abs() > cd.abs() {
                // pivot on the subdiagonal row
                swap[i] = true;
                du[i] = sub;
                e1[i] = nd;
                e2[i] = ne1;
                let m = cd / sub;
                mul[i] = m;
                cd = ce1 - m * nd;
                ce1 = ce2 - m * ne1;
                ce2 = 0.0;
            } else {
                swap[i] = false;
                let pivot = if cd.abs() < tiny {
                    if cd >= 0.0 {
                        tiny
                    } else {
                        -tiny
                    }
                } else {
                    cd
                };
                du[i] = pivot;
                e1[i] = ce1;
                e2[i] = ce2;
                let m = sub / pivot;
                mul[i] = m;
                cd = nd - m * ce1;
                ce1 = ne1 - m * ce2;
                ce2 = 0.0;
            }
        }
        du[n - 1] = if cd.abs() < tiny {
            if cd >= 0.0 {
                tiny
            } else {
                -tiny
            }
        } else {
            cd
        };
        if n > 1 {
            e1[n - 1] = 0.0;
        }
    }

    let solve = |rhs: &mut Vec<f64>| {
        for i in 0..n.saturating_sub(1) {
            if swap[i] {
                rhs.swap(i, i + 1);
            }
            let update = mul[i] * rhs[i];
            rhs[i + 1] -= update;
        }
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            if i + 1 < n {
                acc -= e1[i] * rhs[i + 1];
            }
            if i + 2 < n {
                acc -= e2[i] * rhs[i + 2];
            }
            rhs[i] = acc / du[i];
        }
    };

    let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut best = f64::INFINITY;
    for _ in 0..12 {
        solve(&mut v);
        let nv = norm(&v);
        if !nv.is_finite() || nv == 0.0 {
            break;
        }
        v.iter_mut().for_each(|x| *x /= nv);
        let tv = t.apply(&v);
        let res = (0..n)
            .map(|i| (tv[i] - lambda * v[i]).powi(2))
            .sum::<f64>()
            .sqrt();
        best = best.min(res);
        if res <= target {
            // deterministic sign: largest-magnitude component positive
            let imax = (0..n)
                .max_by(|&i, &j| v[i].abs().partial_cmp(&v[j].abs()).unwrap())
                .unwrap();
            if v[imax] < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
            return Ok(v);
        }
    }
    Err(Error::NotAnEigenvalue {
        shift: lambda,
        residual: best,
    })
}

/// Default dimension cap of the doubling certification.
pub const DEFAULT_TRUNCATION_CAP: usize = 1 << 15;

/// Certified eigenvalues `0..=m_max` of an invariant-subspace Hamiltonian.
pub fn converged_spectrum(
    variant: Variant,
    params: &ModelParams,
    m_max: usize,
    tol_abs: f64,
) -> Result<SpectralResult> {
    converged_spectrum_kind(
        variant.into(),
        params,
        m_max,
        tol_abs,
        DEFAULT_TRUNCATION_CAP,
    )
}

/// As [`converged_spectrum`] for any of the three operators and an explicit
/// truncation cap. Doubles the dimension from `max(4 m_max, 64)` until every
/// requested eigenvalue is stable to `tol_abs` under doubling.
pub fn converged_spectrum_kind(
    kind: MatrixKind,
    params: &ModelParams,
    m_max: usize,
    tol_abs: f64,
    cap: usize,
) -> Result<SpectralResult> {
    if !(tol_abs > 0.0 && tol_abs.is_finite()) {
        return Err(Error::InvalidArgument(
            "convergence tolerance must be positive and finite",
        ));
    }
    let bisect_tol = (tol_abs / 8.0).max(1e-14);
    let mut n = (4 * m_max).max(64).max(m_max + 2);
    if n > cap {
        return Err(Error::NoConvergence { tol: tol_abs, cap });
    }
    let mut prev = eigenvalues_sturm(&build_matrix(kind, params, n), 0, m_max, bisect_tol)?;
    loop {
        let n2 = 2 * n;
        if n2 > cap {
            return Err(Error::NoConvergence { tol: tol_abs, cap });
        }
        let cur = eigenvalues_sturm(&build_matrix(kind, params, n2), 0, m_max, bisect_tol)?;
        let mut upto: Option<usize> = None;
        for i in 0..=m_max {
            if (cur[i] - prev[i]).abs() <= tol_abs {
                upto = Some(i);
            } else {
                break;
            }
        }
        if upto == Some(m_max) {
            return Ok(SpectralResult {
                eigenvalues: cur,
                eigenvectors: None,
                converged_upto: m_max,
                truncation: Truncation {
                    n_basis: n2,
                    m_guard: m_max.max(1),
                    tol_abs,
                },
            });
        }
        prev = cur;
        n = n2;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::validate_params;
    use crate::special::overlap_matrix;

    fn params(omega: f64, omega0: f64, g: f64) -> ModelParams {
        validate_params(omega, omega0, g).unwrap()
    }

    #[test]
    fn a0_matrix_layout() {
        let t = build_matrix(MatrixKind::A0, &params(1.0, 0.5, 0.3), 4);
        assert_eq!(t.diag, vec![0.5, 1.5, 2.5, 3.5]);
        let expected = [0.3, 0.3 * 2f64.sqrt(), 0.3 * 3f64.sqrt()];
        for (a, b) in t.offdiag.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn h_matrix_diagonals_at_zero_coupling() {
        let t2 = build_matrix(MatrixKind::H2, &params(1.0, 1.0, 0.0), 4);
        assert_eq!(t2.diag, vec![2.0, 2.0, 4.0, 4.0]);
        assert_eq!(t2.offdiag, vec![0.0, 0.0, 0.0]);
        let t1 = build_matrix(MatrixKind::H1, &params(1.0, 1.0, 0.0), 4);
        assert_eq!(t1.diag, vec![1.0, 3.0, 3.0, 5.0]);
    }

    #[test]
    fn decomposition_h_equals_a0_plus_projector() {
        // H1 = A0 + omega0 P1 and H2 = A0 + omega0 P2 on the diagonals.
        let p = params(1.0, 0.7, 0.4);
        let a0 = build_matrix(MatrixKind::A0, &p, 8);
        let h1 = build_matrix(MatrixKind::H1, &p, 8);
        let h2 = build_matrix(MatrixKind::H2, &p, 8);
        for k in 0..8 {
            let p1 = if k % 2 == 1 { 1.0 } else { 0.0 };
            assert!((h1.diag[k] - (a0.diag[k] + 0.7 * p1)).abs() < 1e-15);
            assert!((h2.diag[k] - (a0.diag[k] + 0.7 * (1.0 - p1))).abs() < 1e-15);
        }
        assert_eq!(a0.offdiag, h1.offdiag);
        assert_eq!(a0.offdiag, h2.offdiag);
    }

    #[test]
    fn sturm_handles_decoupled_diagonal() {
        let t = SymTridiagonal {
            diag: vec![2.0, 2.0, 4.0, 4.0],
            offdiag: vec![0.0, 0.0, 0.0],
            label: MatrixKind::H2,
        };
        let evals = eigenvalues_sturm(&t, 0, 3, 1e-12).unwrap();
        for (got, want) in evals.iter().zip([2.0, 2.0, 4.0, 4.0]) {
            assert!((got - want).abs() < 1e-11, "{got} vs {want}");
        }
    }

    #[test]
    fn a0_ground_state_matches_shifted_oscillator() {
        // lambda_0 = omega0 - g^2/omega = 0.5 - 0.09 = 0.41
        let t = build_matrix(MatrixKind::A0, &params(1.0, 0.5, 0.3), 200);
        let evals = eigenvalues_sturm(&t, 0, 0, 1e-11).unwrap();
        assert!((evals[0] - 0.41).abs() < 1e-9, "{}", evals[0]);
    }

    #[test]
    fn sturm_matches_dense_oracle_on_grid() {
        for &g in &[0.0, 0.3, 1.0] {
            for &omega0 in &[0.0, 0.2, 1.0] {
                let p = params(1.0, omega0, g);
                for kind in [MatrixKind::H1, MatrixKind::H2, MatrixKind::A0] {
                    let t = build_matrix(kind, &p, 12);
                    let sturm = eigenvalues_sturm(&t, 0, 11, 1e-12).unwrap();
                    let dense = dense_eig_oracle(&t).unwrap();
                    for (a, b) in sturm.iter().zip(dense.eigenvalues.iter()) {
                        assert!((a - b).abs() < 1e-10, "g={g} omega0={omega0} {a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn dense_oracle_two_by_two_closed_form() {
        let (a, b, c) = (0.7, -0.4, 2.1);
        let t = SymTridiagonal {
            diag: vec![a, c],
            offdiag: vec![b],
            label: MatrixKind::A0,
        };
        let r = dense_eig_oracle(&t).unwrap();
        let mid = 0.5 * (a + c);
        let disc = (0.25 * (a - c) * (a - c) + b * b).sqrt();
        assert!((r.eigenvalues[0] - (mid - disc)).abs() < 1e-14);
        assert!((r.eigenvalues[1] - (mid + disc)).abs() < 1e-14);
    }

    #[test]
    fn dense_oracle_diagonal_sorted() {
        let t = SymTridiagonal {
            diag: vec![3.0, 1.0, 2.0],
            offdiag: vec![0.0, 0.0],
            label: MatrixKind::A0,
        };
        let r = dense_eig_oracle(&t).unwrap();
        assert_eq!(r.eigenvalues, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn dense_oracle_dimension_guard() {
        let p = params(1.0, 0.2, 0.4);
        let t = build_matrix(MatrixKind::A0, &p, 65);
        assert!(matches!(
            dense_eig_oracle(&t),
            Err(Error::DimensionTooLarge { n: 65, max: 64 })
        ));
    }

    #[test]
    fn dense_oracle_eigenvectors_satisfy_residual() {
        let p = params(1.0, 0.3, 0.6);
        let t = build_matrix(MatrixKind::H1, &p, 10);
        let r = dense_eig_oracle(&t).unwrap();
        let vecs = r.eigenvectors.as_ref().unwrap();
        for (k, v) in vecs.iter().enumerate() {
            let tv = t.apply(v);
            let res: f64 = tv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - r.eigenvalues[k] * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-12 * t.norm_inf());
        }
    }

    #[test]
    fn bisection_stall_on_pathological_scale() {
        // Gershgorin bounds overflow: no finite bracket exists.
        let t = SymTridiagonal {
            diag: vec![1e308, 1e308],
            offdiag: vec![1e308],
            label: MatrixKind::A0,
        };
        assert!(matches!(
            eigenvalues_sturm(&t, 0, 1, 1e-8),
            Err(Error::BisectionStall { .. })
        ));
        // extreme but representable scales resolve at machine resolution
        let t2 = SymTridiagonal {
            diag: vec![1e308, -1e308],
            offdiag: vec![0.0],
            label: MatrixKind::A0,
        };
        let evals = eigenvalues_sturm(&t2, 0, 1, 1e-8).unwrap();
        assert_eq!(evals.len(), 2);
        assert!(evals[0] < 0.0 && evals[1] > 0.0);
    }

    #[test]
    fn interlacing_under_truncation_growth() {
        let p = params(1.0, 0.4, 0.8);
        for kind in [MatrixKind::H1, MatrixKind::H2] {
            for n in [6usize, 12, 29] {
                let small = dense_eig_oracle(&build_matrix(kind, &p, n)).unwrap();
                let big = dense_eig_oracle(&build_matrix(kind, &p, n + 1)).unwrap();
                for i in 0..n {
                    assert!(big.eigenvalues[i] <= small.eigenvalues[i] + 1e-12);
                    assert!(small.eigenvalues[i] <= big.eigenvalues[i + 1] + 1e-12);
                }
            }
        }
    }

    #[test]
    fn inverse_iteration_on_diagonal_matrix() {
        let t = SymTridiagonal {
            diag: vec![1.0, 2.0, 3.0, 4.0],
            offdiag: vec![0.0, 0.0, 0.0],
            label: MatrixKind::A0,
        };
        let v = eigenvector_inverse_iteration(&t, 3.0).unwrap();
        for (i, x) in v.iter().enumerate() {
            let want = if i == 2 { 1.0 } else { 0.0 };
            assert!((x - want).abs() < 1e-10, "component {i} = {x}");
        }
    }

    #[test]
    fn inverse_iteration_matches_dense_oracle() {
        // fixed LCG noise keeps the case deterministic
        let mut state = 0x2545F4914F6CDD1D_u64;
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let t = SymTridiagonal {
            diag: (0..10).map(|_| next()).collect(),
            offdiag: (0..9).map(|_| 0.5 * next()).collect(),
            label: MatrixKind::A0,
        };
        let dense = dense_eig_oracle(&t).unwrap();
        for &k in &[0usize, 4, 9] {
            let v = eigenvector_inverse_iteration(&t, dense.eigenvalues[k]).unwrap();
            let tv = t.apply(&v);
            let res: f64 = tv
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a - dense.eigenvalues[k] * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(res <= 1e-8 * t.norm_inf());
        }
    }

    #[test]
    fn inverse_iteration_rejects_non_eigenvalue() {
        let p = params(1.0, 0.3, 0.5);
        let t = build_matrix(MatrixKind::H2, &p, 30);
        // midway between consecutive eigenvalues, far from both
        let evals = eigenvalues_sturm(&t, 3, 4, 1e-12).unwrap();
        let shift = 0.5 * (evals[0] + evals[1]);
        assert!(matches!(
            eigenvector_inverse_iteration(&t, shift),
            Err(Error::NotAnEigenvalue { .. })
        ));
    }

    #[test]
    fn a0_eigenvector_matches_overlap_column() {
        let p = params(1.0, 0.4, 0.6);
        let n = 160;
        let t = build_matrix(MatrixKind::A0, &p, n);
        let u = overlap_matrix(n, 0.6, 1.0).unwrap();
        for &m in &[0usize, 3, 10] {
            let lambda = 0.4 + m as f64 - 0.36;
            let v = eigenvector_inverse_iteration(&t, lambda).unwrap();
            let col = u.column(m);
            // align sign on the largest component
            let imax = (0..n)
                .max_by(|&i, &j| col[i].abs().partial_cmp(&col[j].abs()).unwrap())
                .unwrap();
            let sign = (v[imax] * col[imax]).signum();
            let maxdiff = (0..n)
                .map(|i| (v[i] - sign * col[i]).abs())
                .fold(0.0_f64, f64::max);
            assert!(maxdiff <= 1e-7, "m={m}: {maxdiff:.2e}");
        }
    }

    #[test]
    fn converged_spectrum_decoupled_case() {
        let p = params(1.0, 1.0, 0.0);
        let r = converged_spectrum(Variant::H2, &p, 3, 1e-10).unwrap();
        for (got, want) in r.eigenvalues.iter().zip([2.0, 2.0, 4.0, 4.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        assert_eq!(r.converged_upto, 3);
    }

    #[test]
    fn converged_spectrum_certificate_reaches_target() {
        let p = params(1.0, 0.2, 0.5);
        let r = converged_spectrum(Variant::H2, &p, 50, 1e-8).unwrap();
        assert_eq!(r.converged_upto, 50);
        assert_eq!(r.eigenvalues.len(), 51);
        // simple spectrum at g > 0: strictly increasing
        for w in r.eigenvalues.windows(2) {
            assert!(w[1] > w[0]);
        }
    }

    #[test]
    fn h1_h2_coincide_when_omega0_vanishes() {
        let p = params(1.0, 0.0, 0.7);
        let r1 = converged_spectrum(Variant::H1, &p, 20, 1e-10).unwrap();
        let r2 = converged_spectrum(Variant::H2, &p, 20, 1e-10).unwrap();
        for (a, b) in r1.eigenvalues.iter().zip(r2.eigenvalues.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
        // and both equal the A0 ladder m - g^2 (Bogolubov shift)
        for (m, a) in r1.eigenvalues.iter().enumerate() {
            assert!((a - (m as f64 - 0.49)).abs() < 1e-8, "m={m} a={a}");
        }
    }

    #[test]
    fn zero_coupling_spectrum_is_diagonal_multiset() {
        let p = params(1.0, 0.3, 0.0);
        let mut expected: Vec<f64> = Vec::new();
        for k in 0..12 {
            let sigma = if k % 2 == 0 { 1.0 } else { 2.0 };
            expected.push(sigma * 0.3 + k as f64); // H1 pattern
            let sigma = if k % 2 == 0 { 2.0 } else { 1.0 };
            expected.push(sigma * 0.3 + k as f64); // H2 pattern
        }
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut got = Vec::new();
        got.extend(eigenvalues_sturm(&build_matrix(MatrixKind::H1, &p, 12), 0, 11, 1e-12).unwrap());
        got.extend(eigenvalues_sturm(&build_matrix(MatrixKind::H2, &p, 12), 0, 11, 1e-12).unwrap());
        got.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (a, b) in got.iter().zip(expected.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn cap_exhaustion_reports_no_convergence() {
        let p = params(1.0, 0.2, 0.5);
        assert!(matches!(
            converged_spectrum_kind(MatrixKind::H2, &p, 50, 1e-8, 128),
            Err(Error::NoConvergence { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn sturm_agrees_with_dense_on_random_tridiagonals(
                diag in proptest::collection::vec(-2.0f64..2.0, 2..8),
                seed in 0u64..1000,
            ) {
                let n = diag.len();
                let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
                let offdiag: Vec<f64> = (0..n - 1)
                    .map(|_| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
                    })
                    .collect();
                let t = SymTridiagonal { diag, offdiag, label: MatrixKind::A0 };
                let sturm = eigenvalues_sturm(&t, 0, n - 1, 1e-12).unwrap();
                let dense = dense_eig_oracle(&t).unwrap();
                for (a, b) in sturm.iter().zip(dense.eigenvalues.iter()) {
                    prop_assert!((a - b).abs() < 1e-10);
                }
            }
        }
    }
}
