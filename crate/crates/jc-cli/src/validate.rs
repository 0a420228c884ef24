//! Self-contained invariant suite behind `jc-spectra validate`.
//!
//! Each check prints one `PASS`/`FAIL` line; the command exits 0 only when
//! every check passes.

use jc_spectra::*;
use std::io::Write;

struct Outcome {
    name: &'static str,
    detail: String,
    ok: bool,
}

fn check(name: &'static str, run: impl FnOnce() -> Result<(f64, f64)>) -> Outcome {
    // run() returns (observed defect, allowed bound)
    match run() {
        Ok((defect, bound)) => Outcome {
            name,
            ok: defect <= bound,
            detail: format!("defect {defect:.3e}, bound {bound:.3e}"),
        },
        Err(e) => Outcome {
            name,
            ok: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run(out: &mut dyn Write) -> std::io::Result<bool> {
    let p_ref = validate_params(1.0, 0.2, 0.5).unwrap();

    let outcomes = vec![
        check("sturm_vs_dense_oracle", || {
            let mut worst = 0.0_f64;
            for &g in &[0.0, 0.3, 1.0] {
                for &omega0 in &[0.0, 0.2, 1.0] {
                    let p = validate_params(1.0, omega0, g)?;
                    for kind in [MatrixKind::H1, MatrixKind::H2, MatrixKind::A0] {
                        let t = build_matrix(kind, &p, 12);
                        let sturm = eigenvalues_sturm(&t, 0, 11, 1e-12)?;
                        let dense = dense_eig_oracle(&t)?;
                        for (a, b) in sturm.iter().zip(dense.eigenvalues.iter()) {
                            worst = worst.max((a - b).abs());
                        }
                    }
                }
            }
            Ok((worst, 1e-10))
        }),
        check("shifted_oscillator_ladder", || {
            let p = validate_params(1.0, 0.5, 0.8)?;
            let spec = converged_spectrum_kind(MatrixKind::A0, &p, 50, 1e-9, 1 << 15)?;
            let worst = spec
                .eigenvalues
                .iter()
                .enumerate()
                .map(|(m, l)| (l - (0.5 + m as f64 - 0.64)).abs())
                .fold(0.0_f64, f64::max);
            Ok((worst, 1e-8))
        }),
        check("overlap_vs_contour", || {
            let mut worst = 0.0_f64;
            for &t in &[0.2, 0.8, 2.0] {
                for m in (0..=20).step_by(4) {
                    for n in (0..=20).step_by(4) {
                        let closed = displaced_overlap(m, n, t, 1.0)?;
                        let contour = displaced_overlap_contour(m, n, t, 1.0, 256)?;
                        worst = worst.max((closed - contour).abs());
                    }
                }
            }
            Ok((worst, 1e-9))
        }),
        check("overlap_orthogonality", || {
            let u = overlap_matrix(200, 1.0, 1.0)?;
            Ok((u.orthogonality_defect(), 1e-8))
        }),
        check("projector_complementarity", || {
            let mut worst = 0.0_f64;
            for k in 0..=40 {
                for m in 0..=40 {
                    let a = projector_element(ProjectorVariant::P1, k, m, &p_ref)?;
                    let b = projector_element(ProjectorVariant::P2, k, m, &p_ref)?;
                    let delta = if k == m { 1.0 } else { 0.0 };
                    worst = worst.max((a + b - delta).abs());
                }
            }
            Ok((worst, 1e-15))
        }),
        check("projector_parity_sum", || {
            let mut worst = 0.0_f64;
            for &(k, m, g) in &[(0usize, 0usize, 1.0), (3, 5, 0.7), (12, 9, 1.2)] {
                let p = validate_params(1.0, 0.2, g)?;
                let n_sum = default_parity_terms(k, m);
                for v in [ProjectorVariant::P1, ProjectorVariant::P2] {
                    let closed = projector_element(v, k, m, &p)?;
                    let direct = projector_direct_sum(v, k, m, &p, n_sum)?;
                    worst = worst.max((closed - direct).abs());
                }
            }
            Ok((worst, 1e-9))
        }),
        check("projector_idempotency", || {
            let mut worst = 0.0_f64;
            for &g in &[0.5, 1.5] {
                let p = validate_params(1.0, 0.2, g)?;
                for v in [ProjectorVariant::P1, ProjectorVariant::P2] {
                    worst = worst.max(projector_matrix(v, 400, &p)?.idempotency_defect(100));
                }
            }
            Ok((worst, 1e-7))
        }),
        check("bu_identity", || {
            Ok((bu_identity_defect(&p_ref, 400, 100)?, 1e-8))
        }),
        check("kato_engine_vs_closed_forms", || {
            let mut worst = 0.0_f64;
            for &g in &[0.2, 0.5, 1.0] {
                let p = validate_params(1.0, 0.2, g)?;
                for &m in &[0usize, 3, 10] {
                    for v in [Variant::H1, Variant::H2] {
                        worst =
                            worst.max((kato_correction(1, v, m, &p)? - lambda1(v, m, &p)).abs());
                        worst =
                            worst.max((kato_correction(2, v, m, &p)? - lambda2(v, m, &p)?).abs());
                        worst =
                            worst.max((kato_correction(3, v, m, &p)? - lambda3(v, m, &p)?).abs());
                    }
                }
            }
            Ok((worst, 1e-9))
        }),
        check("hardy_row_sums", || {
            let mut worst = f64::NEG_INFINITY;
            for &m in &[16usize, 64, 256] {
                let d = hardy_diagnostics(m, &p_ref)?;
                let diag = displaced_overlap(m, m, 1.0, 1.0)?;
                // margin to the bound; positive means inside
                worst = worst.max(d.row_abs_sum - (1.0 - diag * diag));
            }
            Ok((worst, 1e-9))
        }),
        check("omega0_scaling_law", || {
            let doubled = p_ref.with_omega0(0.4)?;
            let r1 = series_report(Variant::H2, 3, &p_ref, 4)?;
            let r2 = series_report(Variant::H2, 3, &doubled, 4)?;
            let mut worst = 0.0_f64;
            for k in 1..=4usize {
                let expected = 2f64.powi(k as i32) * r1.corrections[k];
                worst = worst.max((r2.corrections[k] - expected).abs() / expected.abs());
            }
            Ok((worst, 1e-6))
        }),
        check("remainder_bound_end_to_end", || {
            let m = 40;
            let spec = converged_spectrum(Variant::H2, &p_ref, m, 1e-9)?;
            let report = series_report(Variant::H2, m, &p_ref, 4)?;
            let resid = (spec.eigenvalues[m] - report.partial_sums[3]).abs();
            let bound = remainder_bound(3, m, &p_ref)?;
            Ok((resid, bound))
        }),
    ];

    let mut all_ok = true;
    for o in &outcomes {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        all_ok &= o.ok;
        writeln!(
            out,
            "{tag} {name}: {detail}",
            name = o.name,
            detail = o.detail
        )?;
    }
    let passed = outcomes.iter().filter(|o| o.ok).count();
    writeln!(out, "{passed}/{} checks passed", outcomes.len())?;
    Ok(all_ok)
}
