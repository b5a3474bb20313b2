//! Property tests for the correlation and summary helpers.

use proptest::prelude::*;
use vcx_core::oracle;
use vcx_core::stats::{pearson, summarize, StatsError};
use vcx_core::features::FrameFeatures;

fn arb_series() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (2usize..=64).prop_flat_map(|n| {
        (
            prop::collection::vec(-1e3f64..1e3, n),
            prop::collection::vec(-1e3f64..1e3, n),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pearson_matches_raw_moment_formula((x, y) in arb_series()) {
        match pearson(&x, &y) {
            Ok(r) => {
                let expected = oracle::pearson_direct(&x, &y).clamp(-1.0, 1.0);
                prop_assert!((r - expected).abs() <= 1e-6, "{r} vs {expected}");
                prop_assert!((-1.0..=1.0).contains(&r));
            }
            Err(StatsError::DegenerateInput) => {
                // Only constant series may be refused here.
                let constant = x.iter().all(|&v| v == x[0]) || y.iter().all(|&v| v == y[0]);
                prop_assert!(constant);
            }
            Err(other) => prop_assert!(false, "unexpected error {other:?}"),
        }
    }

    #[test]
    fn pearson_is_invariant_under_affine_maps(
        (x, y) in arb_series(),
        a in 0.5f64..10.0,
        b in -100.0f64..100.0,
    ) {
        prop_assume!(pearson(&x, &y).is_ok());
        let mapped: Vec<f64> = x.iter().map(|v| a * v + b).collect();
        let base = pearson(&x, &y).unwrap();
        let got = pearson(&mapped, &y).unwrap();
        prop_assert!((base - got).abs() <= 1e-9, "{base} vs {got}");
        // A negative scale flips the sign instead.
        let flipped: Vec<f64> = x.iter().map(|v| -a * v + b).collect();
        let neg = pearson(&flipped, &y).unwrap();
        prop_assert!((base + neg).abs() <= 1e-9, "{base} vs {neg}");
    }

    #[test]
    fn summary_bounds_hold(e in prop::collection::vec(0.0f64..1e3, 1..40)) {
        let records: Vec<FrameFeatures> = e
            .iter()
            .enumerate()
            .map(|(k, &v)| FrameFeatures {
                poc: k as u64,
                e_y: v,
                h: if k == 0 { 0.0 } else { v / 2.0 },
                l_y: v.sqrt(),
                ..FrameFeatures::default()
            })
            .collect();
        let s = summarize(&records).unwrap();
        prop_assert!(s.e_y.mean <= s.e_y.max + 1e-12);
        prop_assert!(s.h.mean <= s.h.max + 1e-12);
        let best = e.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        prop_assert_eq!(s.e_y.max, best);
        prop_assert!(s.si.is_none() && s.ti.is_none());
    }
}
