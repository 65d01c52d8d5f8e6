use crate::divfun::DivisorClass;
use crate::error::Result;
use crate::report::LemmaReport;
use crate::sieve_search::{search_kperfect, SearchConfig};

/// The single biunitary triperfect number divisible by 27.
pub const EXPECTED_HIT: u64 = 2160;

/// Sieves `[1, bound]` for biunitary triperfect `n ≡ 0 (mod 27)` and checks
/// the hit list is `[2160] ∩ [1, bound]`. The hits go in the notes.
pub fn verify_theorem_desk(bound: u64, workers: usize) -> Result<LemmaReport> {
    let mut config = SearchConfig::new(bound, 3, DivisorClass::Biunitary);
    config.residue_filter = Some((27, 0));
    config.worker_count = workers.max(1);
    let hits: Vec<u64> = search_kperfect(&config)?.iter().map(|h| h.n).collect();
    let expected: Vec<u64> = [EXPECTED_HIT].into_iter().filter(|&n| n <= bound).collect();
    let mut report = LemmaReport::new("theorem", format!("n<={bound},27|n,k=3"));
    if hits != expected {
        for n in hits.iter().filter(|n| !expected.contains(n)) {
            report.fail(format!("extra:{n}"));
        }
        for n in expected.iter().filter(|n| !hits.contains(n)) {
            report.fail(format!("missing:{n}"));
        }
    }
    report.note(format!("hits {hits:?}"));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds() {
        let r = verify_theorem_desk(100_000, 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes, vec!["hits [2160]"]);
        let r = verify_theorem_desk(2159, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.notes, vec!["hits []"]);
    }
}
