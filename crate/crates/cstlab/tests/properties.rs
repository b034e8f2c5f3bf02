//! Property tests over the public API.

use cstlab::density::{
    in_support, integrate_phi, phi_closed, rho_joint, semicircle_sample, IntervalSpec,
};
use cstlab::ec::{read_records, write_records, TraceRecord};
use cstlab::galois::{class_fractions_all, DEFAULT_ENUM_CAP};
use cstlab::harness::{count_joint, ks_distance_values, pi_a_count, CountQuery};
use num_traits::One;
use proptest::prelude::*;

/// A Hasse-legal record at an odd "prime-like" index (the stream contracts
/// only require strict ascent, so odd integers are fine as stand-ins).
fn record_strategy() -> impl Strategy<Value = (u64, i64, i64)> {
    (5u64..50_000).prop_flat_map(|p| {
        let b = (4.0 * (p as f64).sqrt()) as i64 / 2;
        (Just(p), -b..=b, -b..=b)
    })
}

fn stream_strategy(max_len: usize) -> impl Strategy<Value = Vec<TraceRecord>> {
    proptest::collection::vec(record_strategy(), 0..max_len).prop_map(|mut raw| {
        raw.sort_by_key(|r| r.0);
        raw.dedup_by_key(|r| r.0);
        raw.into_iter()
            .map(|(p, a1, a2)| TraceRecord::new(p, a1, a2, a1 + a2).expect("legal by construction"))
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_even_and_nonnegative(s in -1.0f64..=1.0) {
        let v = phi_closed(s).unwrap();
        let w = phi_closed(-s).unwrap();
        prop_assert!(v >= 0.0);
        prop_assert!((v - w).abs() < 1e-12);
    }

    #[test]
    fn rho_nonnegative_on_support(s in -4.0f64..=4.0, y in -6.0f64..=6.0) {
        if in_support(s, y) {
            match rho_joint(s, y) {
                Ok(v) => prop_assert!(v >= 0.0),
                // near-parabola flag is the only legal failure inside S
                Err(e) => prop_assert!(e.to_string().contains("parabolic")),
            }
        } else {
            prop_assert!(rho_joint(s, y).is_err());
        }
    }

    #[test]
    fn interval_integral_symmetric(hi in 0.0f64..=1.0) {
        let sym = integrate_phi(&IntervalSpec::new(-hi, hi).unwrap()).unwrap();
        let half = integrate_phi(&IntervalSpec::new(0.0, hi).unwrap()).unwrap();
        prop_assert!((sym - 2.0 * half).abs() < 1e-9);
    }

    #[test]
    fn cache_roundtrip(stream in stream_strategy(40)) {
        let mut buf = Vec::new();
        write_records(&mut buf, &[], &stream).unwrap();
        let back = read_records(buf.as_slice()).unwrap();
        prop_assert_eq!(back, stream);
    }

    #[test]
    fn count_joint_monotone_in_x_and_width(
        stream in stream_strategy(60),
        x1 in 10.0f64..20_000.0,
        dx in 0.0f64..30_000.0,
        w1 in 0.05f64..0.5,
        dw in 0.0f64..0.5,
    ) {
        let q_small = CountQuery::new(x1, 1, 3, IntervalSpec::new(-w1, w1).unwrap()).unwrap();
        let q_big_x = CountQuery::new(x1 + dx, 1, 3, IntervalSpec::new(-w1, w1).unwrap()).unwrap();
        let q_big_w = CountQuery::new(
            x1,
            1,
            3,
            IntervalSpec::new(-(w1 + dw).min(1.0), (w1 + dw).min(1.0)).unwrap(),
        )
        .unwrap();
        let base = count_joint(&stream, &q_small).unwrap();
        prop_assert!(count_joint(&stream, &q_big_x).unwrap() >= base);
        prop_assert!(count_joint(&stream, &q_big_w).unwrap() >= base);
    }

    #[test]
    fn residue_counts_partition_stream(stream in stream_strategy(60), m in 1u64..8) {
        let x = 100_000.0;
        let total: u64 = (0..m)
            .map(|t| {
                let q = CountQuery::new(x, t as i64, m, IntervalSpec::full()).unwrap();
                count_joint(&stream, &q).unwrap()
            })
            .sum();
        prop_assert_eq!(total, stream.len() as u64);
    }

    #[test]
    fn congruence_refines_to_divisors(stream in stream_strategy(60)) {
        // counts for modulus 6 residue t are bounded by modulus 3 and 2 counts
        let x = 100_000.0;
        for t in 0..6i64 {
            let q6 = CountQuery::new(x, t, 6, IntervalSpec::full()).unwrap();
            let q3 = CountQuery::new(x, t, 3, IntervalSpec::full()).unwrap();
            let q2 = CountQuery::new(x, t, 2, IntervalSpec::full()).unwrap();
            let c6 = count_joint(&stream, &q6).unwrap();
            prop_assert!(c6 <= count_joint(&stream, &q3).unwrap());
            prop_assert!(c6 <= count_joint(&stream, &q2).unwrap());
        }
    }

    #[test]
    fn pi_a_bounded_by_joint_count(stream in stream_strategy(60)) {
        // exact-trace count never exceeds the congruence count at any modulus
        let x = 100_000.0;
        for m in [2u64, 5, 11] {
            let q = CountQuery::new(x, 1, m, IntervalSpec::full()).unwrap();
            prop_assert!(
                pi_a_count(&stream, x, 1).unwrap() <= count_joint(&stream, &q).unwrap()
            );
        }
    }

    #[test]
    fn ks_permutation_invariant(mut values in proptest::collection::vec(-1.0f64..=1.0, 1..200), seed in 0u64..1000) {
        let d1 = ks_distance_values(&values).unwrap();
        // deterministic shuffle
        let n = values.len();
        for i in 0..n {
            let j = ((seed as usize).wrapping_mul(31).wrapping_add(i * 17)) % n;
            values.swap(i, j);
        }
        let d2 = ks_distance_values(&values).unwrap();
        prop_assert!((d1 - d2).abs() < 1e-15);
        prop_assert!((0.0..=1.0).contains(&d1));
    }

    #[test]
    fn class_fractions_sum_to_one(m in 1u64..16) {
        let fracs = class_fractions_all(m, DEFAULT_ENUM_CAP).unwrap();
        let sum: num_rational::BigRational = fracs.iter().sum();
        prop_assert!(sum.is_one());
    }

    #[test]
    fn semicircle_within_support(seed in 0u64..500) {
        for u in semicircle_sample(seed, 64).unwrap() {
            prop_assert!((-2.0..=2.0).contains(&u));
        }
    }
}
