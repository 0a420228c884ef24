//! Physical parameters, truncation policy, and the invariant-subspace labels.
//!
//! All quantities share one energy unit; nothing here rescales silently.

use crate::error::{Error, Result};

/// Ratio threshold of the convergence theorem: the perturbation series in
/// omega0 is controlled for `omega0 <= omega * sqrt(3)/(2 pi)`.
pub fn convergence_threshold(omega: f64) -> f64 {
    omega * 3f64.sqrt() / (2.0 * std::f64::consts::PI)
}

/// Validated model parameters of the Hamiltonian
/// `H = omega0 sigma0 + omega a+ a + g sigma1 (a + a+)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega: f64,
    omega0: f64,
    g: f64,
    q: f64,
    convergent: bool,
}

impl ModelParams {
    /// Validates raw inputs and precomputes the series-convergence ratio
    /// `q = 2 omega0 pi / (omega sqrt(3))`.
    pub fn new(omega: f64, omega0: f64, g: f64) -> Result<Self> {
        for (name, value) in [("omega", omega), ("omega0", omega0), ("g", g)] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if omega <= 0.0 {
            return Err(Error::NonPositiveOmega(omega));
        }
        if omega0 < 0.0 {
            return Err(Error::NegativeCoupling {
                name: "omega0",
                value: omega0,
            });
        }
        if g < 0.0 {
            return Err(Error::NegativeCoupling {
                name: "g",
                value: g,
            });
        }
        // ratio first: omega0/omega is always finite here, so q never NaNs
        let q = (omega0 / omega) * (2.0 * std::f64::consts::PI / 3f64.sqrt());
        // Regime test is the theorem inequality omega0 * 2 pi <= omega * sqrt(3),
        // allowed one rounding unit of slack at the boundary.
        let convergent = q <= 1.0 + 4.0 * f64::EPSILON;
        Ok(ModelParams {
            omega,
            omega0,
            g,
            q,
            convergent,
        })
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Convergence ratio `q = 2 omega0 pi / (omega sqrt(3))` of the
    /// geometric remainder estimate.
    pub fn q(&self) -> f64 {
        self.q
    }

    /// True when the parameters sit inside the proven convergence regime.
    pub fn in_convergent_regime(&self) -> bool {
        self.convergent
    }

    /// Dimensionless coupling `g / omega`.
    pub fn coupling_ratio(&self) -> f64 {
        self.g / self.omega
    }

    /// Same parameters with a different atomic frequency. The overlap and
    /// projector structure is omega0-independent, so series scaling tests
    /// reuse everything else.
    pub fn with_omega0(&self, omega0: f64) -> Result<Self> {
        ModelParams::new(self.omega, omega0, self.g)
    }
}

/// Validates `(omega, omega0, g)` and computes the derived regime data.
pub fn validate_params(omega: f64, omega0: f64, g: f64) -> Result<ModelParams> {
    ModelParams::new(omega, omega0, g)
}

/// Truncation policy for the infinite Jacobi matrices.
///
/// Edge eigenvalues of a truncated Jacobi matrix are corrupted, so only
/// indices up to `m_guard` are trusted; the default guard is `n_basis / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    pub n_basis: usize,
    pub m_guard: usize,
    pub tol_abs: f64,
}

impl Truncation {
    pub fn new(n_basis: usize, m_guard: usize, tol_abs: f64) -> Result<Self> {
        if m_guard == 0 || m_guard >= n_basis {
            return Err(Error::InvalidArgument(
                "truncation requires 0 < m_guard < n_basis",
            ));
        }
        if !(tol_abs.is_finite() && tol_abs >= 0.0) {
            return Err(Error::InvalidArgument(
                "truncation tolerance must be finite and nonnegative",
            ));
        }
        Ok(Truncation {
            n_basis,
            m_guard,
            tol_abs,
        })
    }

    /// Default policy: guard at half the basis, desk-scale tolerance.
    pub fn with_n_basis(n_basis: usize) -> Result<Self> {
        Truncation::new(n_basis, (n_basis / 2).max(1), 1e-8)
    }
}

/// Selects one of the two invariant-subspace Hamiltonians.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    H1,
    H2,
}

/// Matrix to build: one of the two Hamiltonian blocks or the shifted
/// oscillator `A0` they share.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    H1,
    H2,
    A0,
}

impl From<Variant> for MatrixKind {
    fn from(v: Variant) -> Self {
        match v {
            Variant::H1 => MatrixKind::H1,
            Variant::H2 => MatrixKind::H2,
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Variant::H1 => write!(f, "h1"),
            Variant::H2 => write!(f, "h2"),
        }
    }
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MatrixKind::H1 => write!(f, "h1"),
            MatrixKind::H2 => write!(f, "h2"),
            MatrixKind::A0 => write!(f, "a0"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_and_regime_for_reference_point() {
        let p = validate_params(1.0, 0.2, 0.5).unwrap();
        // q = 0.4 pi / sqrt(3)
        let expected = 0.4 * std::f64::consts::PI / 3f64.sqrt();
        assert!((p.q() - expected).abs() < 1e-15);
        assert!((p.q() - 0.7255).abs() < 1e-4);
        assert!(p.in_convergent_regime());
    }

    #[test]
    fn omega0_zero_is_valid_and_degenerate() {
        let p = validate_params(1.0, 0.0, 0.5).unwrap();
        assert_eq!(p.q(), 0.0);
        assert!(p.in_convergent_regime());
    }

    #[test]
    fn zero_omega_rejected() {
        assert_eq!(
            validate_params(0.0, 0.2, 0.5),
            Err(Error::NonPositiveOmega(0.0))
        );
    }

    #[test]
    fn negative_and_nonfinite_inputs_rejected() {
        assert!(matches!(
            validate_params(1.0, -0.1, 0.5),
            Err(Error::NegativeCoupling { name: "omega0", .. })
        ));
        assert!(matches!(
            validate_params(1.0, 0.1, -0.5),
            Err(Error::NegativeCoupling { name: "g", .. })
        ));
        assert!(matches!(
            validate_params(f64::NAN, 0.1, 0.5),
            Err(Error::NonFinite { name: "omega", .. })
        ));
        assert!(matches!(
            validate_params(1.0, f64::INFINITY, 0.5),
            Err(Error::NonFinite { name: "omega0", .. })
        ));
    }

    #[test]
    fn regime_flag_at_threshold() {
        let omega = 1.0;
        let boundary = convergence_threshold(omega);
        assert!(validate_params(omega, boundary, 0.3)
            .unwrap()
            .in_convergent_regime());
        assert!(!validate_params(omega, boundary * 1.001, 0.3)
            .unwrap()
            .in_convergent_regime());
    }

    #[test]
    fn truncation_invariants() {
        assert!(Truncation::new(10, 5, 1e-8).is_ok());
        assert!(Truncation::new(10, 0, 1e-8).is_err());
        assert!(Truncation::new(10, 10, 1e-8).is_err());
        let t = Truncation::with_n_basis(64).unwrap();
        assert_eq!(t.m_guard, 32);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            // Total on any finite or non-finite f64 triple: typed result, no panic.
            #[test]
            fn validate_is_total(omega in proptest::num::f64::ANY,
                                 omega0 in proptest::num::f64::ANY,
                                 g in proptest::num::f64::ANY) {
                match validate_params(omega, omega0, g) {
                    Ok(p) => {
                        prop_assert!(p.omega() > 0.0);
                        prop_assert!(p.omega0() >= 0.0);
                        prop_assert!(p.g() >= 0.0);
                        // q may overflow to +inf at absurd magnitude ratios
                        // but never NaNs
                        prop_assert!(!p.q().is_nan());
                        prop_assert!(p.q() >= 0.0);
                    }
                    Err(_) => {}
                }
            }

            #[test]
            fn regime_flag_matches_inequality(omega in 1e-3f64..1e3,
                                              omega0 in 0f64..1e3) {
                let p = validate_params(omega, omega0, 0.1).unwrap();
                let lhs = omega0 * 2.0 * std::f64::consts::PI;
                let rhs = omega * 3f64.sqrt();
                if lhs <= rhs * (1.0 - 1e-12) {
                    prop_assert!(p.in_convergent_regime());
                }
                if lhs > rhs * (1.0 + 1e-12) {
                    prop_assert!(!p.in_convergent_regime());
                }
            }
        }
    }
}
