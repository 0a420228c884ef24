//! API-level contracts: every result type is immutable plain data, safe to
//! share across threads without synchronization.

use jc_spectra::*;

#[test]
fn result_types_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<ModelParams>();
    assert_send_sync::<Truncation>();
    assert_send_sync::<Variant>();
    assert_send_sync::<MatrixKind>();
    assert_send_sync::<SymTridiagonal>();
    assert_send_sync::<SpectralResult>();
    assert_send_sync::<OverlapMatrix>();
    assert_send_sync::<ContourOverlap>();
    assert_send_sync::<ProjectorMatrix>();
    assert_send_sync::<ProjectorVariant>();
    assert_send_sync::<Composition>();
    assert_send_sync::<HardyDiagnostics>();
    assert_send_sync::<SeriesReport>();
    assert_send_sync::<SplittingTable>();
    assert_send_sync::<SplittingRow>();
    assert_send_sync::<ConvergenceRow>();
    assert_send_sync::<Error>();
}

#[test]
fn shared_reads_from_threads() {
    let p = validate_params(1.0, 0.2, 0.5).unwrap();
    let u = overlap_matrix(64, 0.5, 1.0).unwrap();
    std::thread::scope(|s| {
        for variant in [Variant::H1, Variant::H2] {
            let p = &p;
            let u = &u;
            s.spawn(move || {
                let l1 = lambda1(variant, 3, p);
                assert!(l1.is_finite());
                assert!(u.get(0, 0) > 0.0);
            });
        }
    });
}
