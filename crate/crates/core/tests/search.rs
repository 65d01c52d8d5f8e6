use num_bigint::BigUint;
use proptest::prelude::*;

use biunitary::divfun::divisor_sum;
use biunitary::factorint::factor;
use biunitary::sieve_search::{load_checkpoint, run_search, sieve_segment, PerfectHit, SearchConfig};
use biunitary::DivisorClass;

fn class() -> impl Strategy<Value = DivisorClass> {
    prop::sample::select(DivisorClass::ALL_CLASSES.to_vec())
}

fn records(hits: &[PerfectHit]) -> String {
    hits.iter().map(|h| format!("{h}\n")).collect()
}

fn config(bound: u64, k: u64, class: DivisorClass, segment: u64, workers: usize) -> SearchConfig {
    let mut c = SearchConfig::new(bound, k, class);
    c.segment_size = segment;
    c.worker_count = workers;
    c
}

#[test]
fn sieve_matches_closed_form_up_to_1e5() {
    for class in DivisorClass::ALL_CLASSES {
        let values = sieve_segment(1, 100_001, class);
        for (i, v) in values.iter().enumerate() {
            let n = i as u128 + 1;
            assert_eq!(BigUint::from(*v), divisor_sum(&factor(n), class), "{class} n={n}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn sieve_window_matches_closed_form(lo in 1u64..5_000_000, len in 1u64..2_000, class in class()) {
        let values = sieve_segment(lo, lo + len, class);
        prop_assert_eq!(values.len() as u64, len);
        for (i, v) in values.iter().enumerate() {
            let n = lo as u128 + i as u128;
            prop_assert_eq!(BigUint::from(*v), divisor_sum(&factor(n), class));
        }
    }

    #[test]
    fn output_independent_of_workers_and_segments(
        bound in 1u64..200_000,
        k in 2u64..=4,
        class in class(),
        segment in 2u64..50_000,
    ) {
        let reference = records(&run_search(&config(bound, k, class, 1 << 16, 1)).unwrap().hits);
        for workers in [1, 2, 8] {
            let out = records(&run_search(&config(bound, k, class, segment, workers)).unwrap().hits);
            prop_assert_eq!(&out, &reference);
        }
    }

    #[test]
    fn hits_are_exactly_the_k_perfect_numbers(bound in 1u64..20_000, k in 2u64..=3, class in class()) {
        let hits = run_search(&config(bound, k, class, 997, 2)).unwrap().hits;
        let found: Vec<u64> = hits.iter().map(|h| h.n).collect();
        let expected: Vec<u64> = (2..=bound)
            .filter(|&n| divisor_sum(&factor(n as u128), class) == BigUint::from(n) * k)
            .collect();
        prop_assert_eq!(found, expected);
        prop_assert!(hits.iter().all(PerfectHit::is_consistent));
    }

    #[test]
    fn resume_after_any_halt_matches(
        bound in 1_000u64..300_000,
        segment in 100u64..20_000,
        halt in 1u64..40,
        workers in 1usize..=3,
    ) {
        let dir = tempfile::tempdir().unwrap();
        let mut c = config(bound, 3, DivisorClass::Biunitary, segment, workers);
        let reference = records(&run_search(&c).unwrap().hits);
        c.checkpoint_path = Some(dir.path().join("ckpt"));
        c.halt_after_segments = Some(halt);
        let first = run_search(&c).unwrap();
        let saved = load_checkpoint(c.checkpoint_path.as_ref().unwrap()).unwrap().unwrap();
        prop_assert_eq!(saved.last_completed_hi, first.completed_hi);
        prop_assert!(saved.hits.iter().all(|h| h.n < first.completed_hi));
        c.halt_after_segments = None;
        let resumed = run_search(&c).unwrap();
        prop_assert!(resumed.finished);
        prop_assert_eq!(records(&resumed.hits), reference);
    }

    #[test]
    fn bound_prefix_is_monotone(a in 1u64..400_000, b in 1u64..400_000) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let mut small = config(lo, 3, DivisorClass::Biunitary, 1 << 14, 1);
        small.residue_filter = Some((27, 0));
        let mut large = small.clone();
        large.bound = hi;
        let small_hits: Vec<u64> = run_search(&small).unwrap().hits.iter().map(|h| h.n).collect();
        let large_hits: Vec<u64> = run_search(&large).unwrap().hits.iter().map(|h| h.n).filter(|&n| n <= lo).collect();
        prop_assert_eq!(small_hits, large_hits);
    }
}

#[test]
fn hit_records_round_trip() {
    for (k, class, bound) in [
        (2, DivisorClass::Biunitary, 10_000),
        (3, DivisorClass::Biunitary, 2_200_000),
        (2, DivisorClass::Unitary, 100_000),
        (2, DivisorClass::All, 10_000),
        (4, DivisorClass::Biunitary, 1_100_000),
    ] {
        for hit in run_search(&config(bound, k, class, 1 << 16, 1)).unwrap().hits {
            let line = hit.to_string();
            let back: PerfectHit = line.parse().unwrap();
            assert_eq!(back, hit);
            let tampered = line.replace(&format!("n={}", hit.n), &format!("n={}", hit.n + 1));
            assert!(tampered.parse::<PerfectHit>().is_err(), "{tampered}");
        }
    }
}
