use k3split::{
    decide, emit_records, scan, verify, Format, GPolicy, ScanRange, ScanRecord, SurfaceSpec,
};

#[test]
fn json_round_trip_over_a_box() {
    let range = ScanRange::new(2, 7, 1, 50, GPolicy::HyperbolicOnly).unwrap();
    let records = scan(&range).unwrap();
    assert_eq!(records.len() as u128, range.cardinality());
    let bytes = emit_records(&records, Format::Json, Vec::new()).unwrap();
    let back: Vec<ScanRecord> = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(back, records);
}

#[test]
fn records_mirror_verdicts() {
    let range = ScanRange::new(
        2,
        4,
        1,
        30,
        GPolicy::All {
            g_min: 0,
            g_max: 40,
        },
    )
    .unwrap();
    for r in scan(&range).unwrap() {
        let v = decide(&SurfaceSpec::new(r.n, r.d, r.g).unwrap()).unwrap();
        assert_eq!(ScanRecord::from(&v), r);
    }
}

#[test]
fn no_disagreement_when_d_avoids_multiples_of_2n() {
    // 2n ranges over {10, 12, 14}; d in [1, 9] and [15, 19] avoid all of them.
    for (lo, hi) in [(1, 9), (15, 19)] {
        let rep = verify(
            &ScanRange::new(
                5,
                7,
                lo,
                hi,
                GPolicy::All {
                    g_min: 0,
                    g_max: 200,
                },
            )
            .unwrap(),
        )
        .unwrap();
        assert!(rep.disagreements.is_empty(), "d in [{lo}, {hi}]");
    }
}

#[test]
fn non_hyperbolic_disagreements_are_still_delta_zero() {
    let rep = verify(
        &ScanRange::new(
            2,
            6,
            1,
            30,
            GPolicy::All {
                g_min: 0,
                g_max: 300,
            },
        )
        .unwrap(),
    )
    .unwrap();
    assert!(rep.all_at_delta_zero);
    // Past the hyperbolic range there is no degree-0 (-2)-class to explain them.
    assert!(!rep.all_have_deg0_m2_class);
    assert!(rep
        .disagreements
        .iter()
        .all(|r| r.delta == 0 && r.closed_form && !r.brute_force));
}

#[test]
fn non_hyperbolic_corners_count_as_explained() {
    let rep = verify(
        &ScanRange::new(
            2,
            6,
            1,
            30,
            GPolicy::All {
                g_min: 0,
                g_max: 300,
            },
        )
        .unwrap(),
    )
    .unwrap();
    assert!(rep.matches_delta_zero_characterization());
    assert!(rep.disagreements.iter().any(|r| !r.hyperbolic));
    assert!(rep
        .disagreements
        .iter()
        .filter(|r| r.hyperbolic)
        .all(ScanRecord::is_delta_zero_corner));
}
