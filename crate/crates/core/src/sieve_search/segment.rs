//! Segmented evaluation of σ, σ* and σ** over a window `[lo, hi)`.

use crate::divfun::{sigma_prime_power_u128, DivisorClass};

/// Primes up to `limit` by a plain sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let limit = limit as usize;
    let mut composite = vec![false; limit + 1];
    let mut out = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

pub(crate) fn isqrt_u64(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Reusable sieve state: the base primes and per-prime closed-form tables.
#[derive(Clone, Debug)]
pub struct SegmentSieve {
    class: DivisorClass,
    primes: Vec<u64>,
    max_hi: u64,
}

impl SegmentSieve {
    /// Prepares for segments with `hi ≤ max_hi`.
    pub fn new(max_hi: u64, class: DivisorClass) -> Self {
        let root = isqrt_u64(max_hi.saturating_sub(1));
        SegmentSieve {
            class,
            primes: primes_up_to(root),
            max_hi,
        }
    }

    pub fn class(&self) -> DivisorClass {
        self.class
    }

    /// Class sums of every `n` in `[lo, hi)`, position `i` holding `n = lo + i`.
    ///
    /// For each base prime `p ≤ √(hi-1)` the full `p`-part of each multiple is
    /// divided out and the accumulator multiplied by the closed form at that
    /// prime power; a leftover cofactor `> 1` is a single prime `q` and
    /// contributes `q + 1`.
    pub fn sigma_values(&self, lo: u64, hi: u64) -> Vec<u128> {
        assert!(lo >= 1 && lo <= hi, "segment must satisfy 1 <= lo <= hi");
        assert!(hi <= self.max_hi, "segment end {hi} beyond prepared bound {}", self.max_hi);
        let len = (hi - lo) as usize;
        let mut acc = vec![1u128; len];
        let mut rest: Vec<u64> = (lo..hi).collect();
        let mut table: Vec<u128> = Vec::with_capacity(64);
        for &p in &self.primes {
            if p * p >= hi {
                break;
            }
            table.clear();
            table.push(1);
            let first = lo.div_ceil(p) * p;
            let mut m = first;
            while m < hi {
                let i = (m - lo) as usize;
                let mut r = rest[i];
                let mut e = 0usize;
                while r % p == 0 {
                    r /= p;
                    e += 1;
                }
                rest[i] = r;
                while table.len() <= e {
                    let next = table.len() as u32;
                    table.push(
                        sigma_prime_power_u128(p as u128, next, self.class)
                            .expect("prime-power sum exceeds 128 bits"),
                    );
                }
                acc[i] = acc[i]
                    .checked_mul(table[e])
                    .expect("divisor-sum accumulator overflow");
                m += p;
            }
        }
        for (a, &r) in acc.iter_mut().zip(&rest) {
            if r > 1 {
                *a = a
                    .checked_mul(r as u128 + 1)
                    .expect("divisor-sum accumulator overflow");
            }
        }
        acc
    }
}

/// One-shot form of [`SegmentSieve::sigma_values`].
pub fn sieve_segment(lo: u64, hi: u64, class: DivisorClass) -> Vec<u128> {
    SegmentSieve::new(hi, class).sigma_values(lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        let v = sieve_segment(2100, 2200, DivisorClass::Biunitary);
        assert_eq!(v[60], 6480);
        let v = sieve_segment(80, 100, DivisorClass::Biunitary);
        assert_eq!(v[10], 180);
        for class in DivisorClass::ALL_CLASSES {
            assert_eq!(sieve_segment(1, 2, class), vec![1]);
        }
    }

    #[test]
    fn primes_prefix() {
        assert_eq!(primes_up_to(30), vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(primes_up_to(1).is_empty());
    }

    #[test]
    fn segment_boundaries_do_not_matter() {
        let sieve = SegmentSieve::new(5000, DivisorClass::Biunitary);
        let whole = sieve.sigma_values(1, 5000);
        let mut pieces = Vec::new();
        let mut lo = 1;
        for hi in [2, 3, 17, 1024, 1025, 4999, 5000] {
            pieces.extend(sieve.sigma_values(lo, hi));
            lo = hi;
        }
        assert_eq!(whole, pieces);
    }
}
