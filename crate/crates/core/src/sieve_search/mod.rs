//! Exhaustive search for `σ_class(n) = k·n` up to a bound.
//!
//! Windows of `segment_size` integers are sieved independently on a rayon
//! pool, `worker_count` windows per batch. Batches are merged in ascending
//! order, so output does not depend on the degree of parallelism. Every
//! candidate is refactored and re-summed before it is accepted.

mod checkpoint;
mod record;
mod segment;

use std::path::PathBuf;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::divfun::{divisor_sum, DivisorClass};
use crate::error::{Error, Result};
use crate::factorint::factor;

pub use checkpoint::{load as load_checkpoint, Checkpoint};
pub use record::{export_bfile, write_bfile, PerfectHit};
pub use segment::{primes_up_to, sieve_segment, SegmentSieve};

pub const MAX_BOUND: u64 = 1_000_000_000_000;
pub const DEFAULT_SEGMENT_SIZE: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub bound: u64,
    pub k: u64,
    pub class: DivisorClass,
    pub segment_size: u64,
    pub worker_count: usize,
    /// Keep only `n ≡ residue (mod modulus)`.
    pub residue_filter: Option<(u64, u64)>,
    pub checkpoint_path: Option<PathBuf>,
    /// Stop after this many segments in this invocation (for resumable runs).
    pub halt_after_segments: Option<u64>,
}

impl SearchConfig {
    pub fn new(bound: u64, k: u64, class: DivisorClass) -> Self {
        SearchConfig {
            bound,
            k,
            class,
            segment_size: DEFAULT_SEGMENT_SIZE,
            worker_count: 1,
            residue_filter: None,
            checkpoint_path: None,
            halt_after_segments: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if self.bound == 0 || self.bound > MAX_BOUND {
            return bad(format!("bound must be in [1, {MAX_BOUND}], got {}", self.bound));
        }
        if self.k < 2 {
            return bad(format!("k must be at least 2, got {}", self.k));
        }
        if self.segment_size < 2 {
            return bad(format!("segment size must be at least 2, got {}", self.segment_size));
        }
        if self.worker_count == 0 {
            return bad("worker count must be at least 1".into());
        }
        if let Some((m, _)) = self.residue_filter {
            if m == 0 {
                return bad("residue modulus must be at least 1".into());
            }
        }
        Ok(())
    }

    fn accepts(&self, n: u64) -> bool {
        n >= 2
            && n <= self.bound
            && self.residue_filter.is_none_or(|(m, r)| n % m == r % m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOutcome {
    pub hits: Vec<PerfectHit>,
    /// Every `n < completed_hi` has been examined.
    pub completed_hi: u64,
    pub finished: bool,
}

/// Rebuilds a hit from scratch, failing if the sieve value disagrees.
fn confirm(n: u64, sieve_value: u128, config: &SearchConfig) -> Result<PerfectHit> {
    let factorization = factor(n as u128);
    let sigma_value = divisor_sum(&factorization, config.class);
    if sigma_value != BigUint::from(sieve_value) || sigma_value != BigUint::from(n) * config.k {
        return Err(Error::SieveMismatch {
            n,
            sieve: sieve_value.to_string(),
            direct: sigma_value.to_string(),
        });
    }
    Ok(PerfectHit {
        n,
        k: config.k,
        class: config.class,
        factorization,
        sigma_value,
    })
}

fn scan_segment(sieve: &SegmentSieve, lo: u64, hi: u64, config: &SearchConfig) -> Result<Vec<PerfectHit>> {
    let values = sieve.sigma_values(lo, hi);
    let k = config.k as u128;
    let mut hits = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let n = lo + i as u64;
        if v == k * n as u128 && config.accepts(n) {
            hits.push(confirm(n, v, config)?);
        }
    }
    Ok(hits)
}

fn resume_point(config: &SearchConfig) -> Result<(u64, Vec<PerfectHit>)> {
    let Some(path) = &config.checkpoint_path else {
        return Ok((1, Vec::new()));
    };
    let Some(cp) = checkpoint::load(path)? else {
        return Ok((1, Vec::new()));
    };
    if let Some(h) = cp
        .hits
        .iter()
        .find(|h| h.k != config.k || h.class != config.class || !config.accepts(h.n))
    {
        return Err(Error::Checkpoint {
            path: path.clone(),
            reason: format!("record `{h}` does not belong to this search"),
        });
    }
    Ok((cp.last_completed_hi.max(1), cp.hits))
}

/// Runs or resumes a search, honoring `halt_after_segments`.
pub fn run_search(config: &SearchConfig) -> Result<SearchOutcome> {
    config.validate()?;
    let end = config.bound + 1;
    let (mut lo, mut hits) = resume_point(config)?;
    let sieve = SegmentSieve::new(end, config.class);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.worker_count)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    let mut budget = config.halt_after_segments.unwrap_or(u64::MAX);

    while lo < end && budget > 0 {
        let mut windows = Vec::new();
        let mut w_lo = lo;
        while w_lo < end && (windows.len() as u64) < budget.min(config.worker_count as u64) {
            let w_hi = w_lo.saturating_add(config.segment_size).min(end);
            windows.push((w_lo, w_hi));
            w_lo = w_hi;
        }
        let batch: Vec<Vec<PerfectHit>> = pool.install(|| {
            windows
                .par_iter()
                .map(|&(a, b)| scan_segment(&sieve, a, b, config))
                .collect::<Result<_>>()
        })?;
        let batch: Vec<PerfectHit> = batch.into_iter().flatten().collect();
        if let Some(path) = &config.checkpoint_path {
            checkpoint::append(path, &batch, w_lo)?;
        }
        hits.extend(batch);
        budget -= windows.len() as u64;
        lo = w_lo;
    }
    Ok(SearchOutcome {
        hits,
        completed_hi: lo,
        finished: lo >= end,
    })
}

/// All hits up to the bound, ascending.
pub fn search_kperfect(config: &SearchConfig) -> Result<Vec<PerfectHit>> {
    let config = SearchConfig {
        halt_after_segments: None,
        ..config.clone()
    };
    Ok(run_search(&config)?.hits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ns(hits: &[PerfectHit]) -> Vec<u64> {
        hits.iter().map(|h| h.n).collect()
    }

    #[test]
    fn biunitary_perfect_below_ten_thousand() {
        let hits = search_kperfect(&SearchConfig::new(10_000, 2, DivisorClass::Biunitary)).unwrap();
        assert_eq!(ns(&hits), vec![6, 60, 90]);
    }

    #[test]
    fn triperfect_small_window() {
        let mut cfg = SearchConfig::new(2200, 3, DivisorClass::Biunitary);
        cfg.segment_size = 97;
        cfg.worker_count = 3;
        assert_eq!(ns(&search_kperfect(&cfg).unwrap()), vec![120, 672, 2160]);
        cfg.residue_filter = Some((27, 0));
        assert_eq!(ns(&search_kperfect(&cfg).unwrap()), vec![2160]);
    }

    #[test]
    fn bound_is_inclusive() {
        let hits = search_kperfect(&SearchConfig::new(2160, 3, DivisorClass::Biunitary)).unwrap();
        assert_eq!(ns(&hits), vec![120, 672, 2160]);
        let hits = search_kperfect(&SearchConfig::new(2159, 3, DivisorClass::Biunitary)).unwrap();
        assert_eq!(ns(&hits), vec![120, 672]);
    }

    #[test]
    fn rejects_bad_configs() {
        let base = SearchConfig::new(100, 2, DivisorClass::All);
        let mut c = base.clone();
        c.k = 1;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.segment_size = 1;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.bound = MAX_BOUND + 1;
        assert!(c.validate().is_err());
        let mut c = base.clone();
        c.residue_filter = Some((0, 0));
        assert!(c.validate().is_err());
        let mut c = base;
        c.worker_count = 0;
        assert!(c.validate().is_err());
    }

    #[test]
    fn halted_run_resumes() {
        let dir = tempfile::tempdir().unwrap();
        let mut cfg = SearchConfig::new(3000, 3, DivisorClass::Biunitary);
        cfg.segment_size = 500;
        cfg.checkpoint_path = Some(dir.path().join("k3.ckpt"));
        cfg.halt_after_segments = Some(2);
        let first = run_search(&cfg).unwrap();
        assert!(!first.finished);
        assert_eq!(first.completed_hi, 1001);
        assert_eq!(ns(&first.hits), vec![120, 672]);
        cfg.halt_after_segments = None;
        let rest = run_search(&cfg).unwrap();
        assert!(rest.finished);
        assert_eq!(ns(&rest.hits), vec![120, 672, 2160]);

        let mut other = cfg.clone();
        other.k = 2;
        assert!(matches!(run_search(&other), Err(Error::Checkpoint { .. })));
    }
}
