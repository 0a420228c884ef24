//! Perturbation series in the atomic frequency omega0.
//!
//! The order-k correction is the Kato trace sum
//! `lambda^(k)_m = ((-omega0)^k / k) sum tr[P S^(n1) ... P S^(nk)]`
//! over compositions `n1 + ... + nk = k - 1`, with `S^0 = -|a_m><a_m|` and
//! `S^n` the reduced resolvent weights `1/(omega^n (i-m)^n)`. Closed forms
//! for orders 1..3 double as cross-checks of the trace engine, and the
//! geometric remainder bound caps the series tail for `q < 1`.

use crate::error::{Error, Result};
use crate::model::{ModelParams, Variant};
use crate::projectors::{projector_element, ProjectorVariant};
use crate::special::displaced_overlap;
use crate::window::{certified_window, window_halfwidth, CertifiedWindow};

/// Default cap on the trace-engine order.
pub const DEFAULT_ORDER_CAP: usize = 5;

/// One composition `(n1, ..., nk)` of `k - 1` into `k` nonnegative parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<usize>,
}

/// All compositions of `k - 1` into `k` parts, lexicographic.
pub fn compositions(k: usize) -> Vec<Composition> {
    fn rec(prefix: &mut Vec<usize>, remaining: usize, slots: usize, out: &mut Vec<Composition>) {
        if slots == 1 {
            let mut parts = prefix.clone();
            parts.push(remaining);
            out.push(Composition { parts });
            return;
        }
        for v in 0..=remaining {
            prefix.push(v);
            rec(prefix, remaining - v, slots - 1, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 {
        rec(&mut Vec::new(), k - 1, k, &mut out);
    }
    out
}

/// `N_k = (2k-2)! / ((k-1)!)^2`, the composition count.
pub fn composition_count(k: usize) -> u64 {
    // binomial(2k-2, k-1) by the multiplicative rule, exact in u128
    let n = 2 * k as u128 - 2;
    let r = k as u128 - 1;
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc as u64
}

/// Unperturbed level `lambda^(0)_m = m omega + omega0 - g^2/omega`.
pub fn lambda0(m: usize, params: &ModelParams) -> f64 {
    m as f64 * params.omega() + params.omega0() - params.g() * params.g() / params.omega()
}

/// First-order correction
/// `omega0/2 +- (-1)^m (omega0/2) e^(-2g^2/w^2) L_m(4g^2/w^2)`;
/// the Laguerre term adds for H2 and subtracts for H1.
pub fn lambda1(variant: Variant, m: usize, params: &ModelParams) -> f64 {
    let diag = displaced_overlap(m, m, 2.0 * params.g(), params.omega())
        .expect("validated params cannot fail the overlap");
    let alternating = if m % 2 == 0 { diag } else { -diag };
    let half = params.omega0() / 2.0;
    match variant {
        Variant::H1 => half - half * alternating,
        Variant::H2 => half + half * alternating,
    }
}

/// Second-order correction, windowed with certified tail:
/// `(omega0^2/4 omega) sum_(k != m) [P^(m)_k(2g)]^2 / (m - k)`.
/// The off-diagonal perturbation elements square identically for both
/// variants, so the value does not depend on `variant`.
pub fn lambda2(_variant: Variant, m: usize, params: &ModelParams) -> Result<f64> {
    let w = certified_window(m, params)?;
    let mut sum = 0.0;
    for (pos, &i) in w.indices.iter().enumerate() {
        if i == m {
            continue;
        }
        sum += w.row[pos] * w.row[pos] / (m as f64 - i as f64);
    }
    Ok(params.omega0().powi(2) / (4.0 * params.omega()) * sum)
}

/// Third-order correction, windowed double sum with the diagonal term:
/// `(omega0^3/omega^2) [ sum_(i,j != m) V_mi V_ij V_jm / ((i-m)(j-m))
///   - V_mm sum_(i != m) V_mi^2 / (i-m)^2 ]` with `V` the transformed
/// projector of the chosen variant.
pub fn lambda3(variant: Variant, m: usize, params: &ModelParams) -> Result<f64> {
    let w = engine_window(variant.into(), m, params)?;
    let len = w.indices.len();
    let pm = w.pos_m;
    let row_m: Vec<f64> = (0..len).map(|a| w.p[pm * len + a]).collect();
    let mut weighted = vec![0.0_f64; len];
    let mut s2 = 0.0;
    for a in 0..len {
        if a == pm {
            continue;
        }
        let d = w.indices[a] as f64 - m as f64;
        weighted[a] = row_m[a] / d;
        s2 += row_m[a] * row_m[a] / (d * d);
    }
    let mut s1 = 0.0;
    for a in 0..len {
        if a == pm {
            continue;
        }
        let mut inner = 0.0;
        for b in 0..len {
            if b == pm {
                continue;
            }
            inner += w.p[a * len + b] * weighted[b];
        }
        s1 += weighted[a] * inner;
    }
    let omega = params.omega();
    Ok(params.omega0().powi(3) / (omega * omega) * (s1 - row_m[pm] * s2))
}

/// Projector matrix restricted to a certified window around `m`.
struct EngineWindow {
    indices: Vec<usize>,
    pos_m: usize,
    /// `p[a * len + b] = P(v)_(indices[a], indices[b])`
    p: Vec<f64>,
}

fn engine_window(
    variant: ProjectorVariant,
    m: usize,
    params: &ModelParams,
) -> Result<EngineWindow> {
    let CertifiedWindow { indices, pos_m, .. } = certified_window(m, params)?;
    let len = indices.len();
    let mut p = vec![0.0_f64; len * len];
    for a in 0..len {
        for b in a..len {
            let v = projector_element(variant, indices[a], indices[b], params)?;
            p[a * len + b] = v;
            p[b * len + a] = v;
        }
    }
    Ok(EngineWindow { indices, pos_m, p })
}

impl EngineWindow {
    /// Evaluates one rotated trace `-(P D(n_1) P ... D(n_(k-1)) P)_mm`.
    ///
    /// `S^0` is diagonal `-delta_im`, so the spectral weights stay a
    /// diagonal scaling; the trailing `S^0` of the rotation collapses the
    /// trace to a single matrix element.
    fn trace(&self, rotated: &[usize], omega: f64, m: usize) -> f64 {
        let len = self.indices.len();
        let pm = self.pos_m;
        debug_assert_eq!(*rotated.last().unwrap(), 0);
        let mut w: Vec<f64> = (0..len).map(|a| self.p[a * len + pm]).collect();
        for &nj in &rotated[..rotated.len() - 1] {
            if nj == 0 {
                let keep = -w[pm];
                w.iter_mut().for_each(|x| *x = 0.0);
                w[pm] = keep;
            } else {
                for a in 0..len {
                    if a == pm {
                        w[a] = 0.0;
                    } else {
                        let d = omega * (self.indices[a] as f64 - m as f64);
                        w[a] /= d.powi(nj as i32);
                    }
                }
            }
            // w <- P w
            let mut next = vec![0.0_f64; len];
            for a in 0..len {
                let mut acc = 0.0;
                let row = &self.p[a * len..(a + 1) * len];
                for b in 0..len {
                    acc += row[b] * w[b];
                }
                next[a] = acc;
            }
            w = next;
        }
        -w[pm]
    }
}

fn rotate_to_trailing_zero(parts: &[usize]) -> Vec<usize> {
    let j0 = parts
        .iter()
        .position(|&n| n == 0)
        .expect("every composition of k-1 into k parts has a zero");
    let mut rotated = Vec::with_capacity(parts.len());
    rotated.extend_from_slice(&parts[j0 + 1..]);
    rotated.extend_from_slice(&parts[..=j0]);
    rotated
}

/// Per-composition contributions to the order-k correction, in the
/// lexicographic composition order.
pub fn kato_correction_terms(
    k: usize,
    variant: Variant,
    m: usize,
    params: &ModelParams,
) -> Result<Vec<f64>> {
    if k == 0 || k > DEFAULT_ORDER_CAP {
        return Err(Error::OrderTooHigh {
            k,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let window = engine_window(variant.into(), m, params)?;
    Ok(terms_with_window(&window, k, m, params))
}

fn terms_with_window(window: &EngineWindow, k: usize, m: usize, params: &ModelParams) -> Vec<f64> {
    let scale = (-params.omega0()).powi(k as i32) / k as f64;
    compositions(k)
        .iter()
        .map(|comp| {
            let rotated = rotate_to_trailing_zero(&comp.parts);
            scale * window.trace(&rotated, params.omega(), m)
        })
        .collect()
}

/// Order-k correction by the trace engine.
pub fn kato_correction(k: usize, variant: Variant, m: usize, params: &ModelParams) -> Result<f64> {
    Ok(kato_correction_terms(k, variant, m, params)?.iter().sum())
}

/// `sigma_m = sqrt( sum_(j != m) [P^(m)_j(2g)]^2 / (j-m)^2 )`, the decay
/// gauge of the higher-order bounds.
pub fn sigma_m(m: usize, params: &ModelParams) -> Result<f64> {
    let w = certified_window(m, params)?;
    let mut sum = 0.0;
    for (pos, &j) in w.indices.iter().enumerate() {
        if j == m {
            continue;
        }
        let d = j as f64 - m as f64;
        sum += w.row[pos] * w.row[pos] / (d * d);
    }
    Ok(sum.sqrt())
}

/// `f_m = sqrt( sum_(i != m) 1/(i-m)^2 ) < pi/sqrt(3)`.
pub fn f_m(m: usize) -> f64 {
    let mut sum = std::f64::consts::PI * std::f64::consts::PI / 6.0;
    for k in 1..=m {
        sum += 1.0 / (k as f64 * k as f64);
    }
    sum.sqrt()
}

/// Regularity diagnostics of the `t_m` transformation.
#[derive(Debug, Clone)]
pub struct HardyDiagnostics {
    /// `t_m = sum_(k != m) [P^(m)_k(2g)]^2 / (m - k)`
    pub t_m: f64,
    /// `sum_n |C_(m,n)|`, bounded by `1 - [P^(m)_m(2g)]^2`
    pub row_abs_sum: f64,
    /// `(n, C_(m,n))` samples at n = 1, 2, 3
    pub c_mn_samples: Vec<(usize, f64)>,
}

/// Evaluates `t_m`, the absolute row sum of the regular transformation
/// `C_(m,n)`, and small-n samples of its columns.
pub fn hardy_diagnostics(m: usize, params: &ModelParams) -> Result<HardyDiagnostics> {
    let g2 = 2.0 * params.g();
    let omega = params.omega();
    let width = window_halfwidth(m, params);
    let j_top = m + width;
    // full contiguous row: P^(m)_j(2g) for j = 0..=j_top
    let row: Vec<f64> = (0..=j_top)
        .map(|j| displaced_overlap(m, j, g2, omega))
        .collect::<Result<_>>()?;
    let mass: f64 = row.iter().map(|v| v * v).sum();
    if 1.0 - mass > crate::window::TAIL_BUDGET {
        return Err(Error::TailNotConverged(
            "hardy row kept less than 1 - 1e-12 of the mass",
        ));
    }

    let mut t_m = 0.0;
    for (j, v) in row.iter().enumerate() {
        if j != m {
            t_m += v * v / (m as f64 - j as f64);
        }
    }

    let c_at = |n: usize| -> f64 {
        let upper = if m + n <= j_top {
            row[m + n] * row[m + n]
        } else {
            0.0
        };
        if n <= m {
            row[m - n] * row[m - n] - upper
        } else {
            -upper
        }
    };

    let mut row_abs_sum = 0.0;
    for n in 1..=m.max(width) {
        row_abs_sum += c_at(n).abs();
    }
    let c_mn_samples = (1..=3).map(|n| (n, c_at(n))).collect();
    Ok(HardyDiagnostics {
        t_m,
        row_abs_sum,
        c_mn_samples,
    })
}

/// Smallest `m*` such that `|1 + (-1)^m P^(m)_m(2g)| < pi/sqrt(3)` holds for
/// every `m` in `[m*, horizon]`. A finite-range certificate, not a proof
/// for all m; the certificate is rejected as empty when only the last index
/// would qualify.
pub fn find_m0(params: &ModelParams, horizon: usize) -> Result<usize> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1"));
    }
    let threshold = std::f64::consts::PI / 3f64.sqrt();
    let c = 4.0 * params.g() * params.g() / (params.omega() * params.omega());
    let pref = (-c / 2.0).exp();
    // rolling Laguerre recurrence over the diagonal overlaps
    let mut lm1 = 1.0_f64;
    let mut l = 1.0 - c;
    let mut last_fail: Option<usize> = None;
    for m in 0..=horizon {
        let diag = pref
            * match m {
                0 => 1.0,
                1 => l,
                _ => {
                    let kf = (m - 1) as f64;
                    let next = ((2.0 * kf + 1.0 - c) * l - kf * lm1) / (kf + 1.0);
                    lm1 = l;
                    l = next;
                    l
                }
            };
        let alternating = if m % 2 == 0 { diag } else { -diag };
        if (1.0 + alternating).abs() >= threshold {
            last_fail = Some(m);
        }
    }
    match last_fail {
        None => Ok(0),
        Some(f) if f + 1 < horizon => Ok(f + 1),
        _ => Err(Error::NotFoundWithinHorizon { horizon }),
    }
}

/// Geometric remainder bound
/// `|lambda_m - sum_(k<=n) lambda^(k)_m| < (3 omega / 4 pi^2) sigma_m q^n / (1-q)`.
///
/// Valid for `n > 2`, `q < 1`, and `m` inside the finite-horizon
/// certificate delivered by [`find_m0`] (the theorem's `m > m0`).
pub fn remainder_bound(n: usize, m: usize, params: &ModelParams) -> Result<f64> {
    if n <= 2 {
        return Err(Error::OrderTooLow(n));
    }
    let q = params.q();
    if !(q < 1.0) {
        return Err(Error::OutsideConvergentRegime { q });
    }
    let horizon = (2 * m).max(256);
    let m_star = match find_m0(params, horizon) {
        Ok(v) => v,
        Err(Error::NotFoundWithinHorizon { .. }) => {
            return Err(Error::M0NotCertified { m, m0: None })
        }
        Err(e) => return Err(e),
    };
    if m < m_star {
        return Err(Error::M0NotCertified {
            m,
            m0: Some(m_star),
        });
    }
    let sigma = sigma_m(m, params)?;
    let omega = params.omega();
    Ok(
        3.0 * omega / (4.0 * std::f64::consts::PI * std::f64::consts::PI)
            * sigma
            * q.powi(n as i32)
            / (1.0 - q),
    )
}

/// Full series diagnostics for one level.
#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub variant: Variant,
    pub m: usize,
    /// Convergence ratio `2 omega0 pi / (omega sqrt(3))`.
    pub q: f64,
    /// `lambda^(0) ..= lambda^(k_max)`.
    pub corrections: Vec<f64>,
    /// Cumulative sums of `corrections`.
    pub partial_sums: Vec<f64>,
    /// Largest single trace magnitude per order (index 0 holds
    /// `|lambda^(0)|`); the per-term counterpart of the order bound.
    pub max_abs_terms: Vec<f64>,
    pub sigma_m: f64,
    pub t_m: f64,
    /// Finite-horizon certificate index, when one exists.
    pub m0: Option<usize>,
    /// Remainder bound for truncation after order n; `None` where the bound
    /// does not apply (n <= 2, q >= 1, or m outside the certificate).
    pub remainder_bounds: Vec<Option<f64>>,
}

/// Assembles corrections, partial sums, decay diagnostics, and remainder
/// bounds through order `k_max`.
pub fn series_report(
    variant: Variant,
    m: usize,
    params: &ModelParams,
    k_max: usize,
) -> Result<SeriesReport> {
    if k_max > DEFAULT_ORDER_CAP {
        return Err(Error::OrderTooHigh {
            k: k_max,
            cap: DEFAULT_ORDER_CAP,
        });
    }
    let window = engine_window(variant.into(), m, params)?;
    let mut corrections = vec![lambda0(m, params)];
    let mut max_abs_terms = vec![corrections[0].abs()];
    for k in 1..=k_max {
        let terms = terms_with_window(&window, k, m, params);
        corrections.push(terms.iter().sum());
        max_abs_terms.push(terms.iter().fold(0.0_f64, |a, t| a.max(t.abs())));
    }
    let mut partial_sums = Vec::with_capacity(corrections.len());
    let mut acc = 0.0;
    for c in &corrections {
        acc += c;
        partial_sums.push(acc);
    }
    let hardy = hardy_diagnostics(m, params)?;
    let sigma = sigma_m(m, params)?;
    let m0 = find_m0(params, (2 * m).max(256)).ok();
    let remainder_bounds = (0..=k_max)
        .map(|n| remainder_bound(n, m, params).ok())
        .collect();
    Ok(SeriesReport {
        variant,
        m,
        q: params.q(),
        corrections,
        partial_sums,
        max_abs_terms,
        sigma_m: sigma,
        t_m: hardy.t_m,
        m0,
        remainder_bounds,
    })
}
