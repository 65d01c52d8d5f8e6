//! Exact primality and factorization for integers up to 2^128 - 1.

mod modring;
mod prime;
mod rho;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

pub use modring::pow_mod;
pub use prime::{is_prime, jacobi, primality_is_proven, MR13_BOUND};
pub(crate) use prime::isqrt;

/// Canonical prime-power decomposition; the empty list stands for 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Factorization {
    entries: Vec<(u128, u32)>,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization::default()
    }

    /// Builds a factorization from `(prime, exponent)` pairs, checking that the
    /// primes are strictly increasing, actually prime, and carry exponent ≥ 1.
    pub fn from_entries(entries: Vec<(u128, u32)>) -> Result<Self> {
        for w in entries.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "primes must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(p, e) in &entries {
            if e == 0 {
                return Err(Error::InvalidArgument(format!("zero exponent on {p}")));
            }
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
        }
        Ok(Factorization { entries })
    }

    /// Merges unordered pairs (repeated primes allowed) without primality checks.
    pub(crate) fn collect<I: IntoIterator<Item = (u128, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (p, e) in pairs {
            if e > 0 {
                *map.entry(p).or_insert(0u32) += e;
            }
        }
        Factorization {
            entries: map.into_iter().collect(),
        }
    }

    pub fn entries(&self) -> &[(u128, u32)] {
        &self.entries
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn primes(&self) -> impl Iterator<Item = u128> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u128) -> u32 {
        self.entries
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.entries[i].1)
    }

    pub fn contains(&self, p: u128) -> bool {
        self.exponent_of(p) > 0
    }

    /// Product of the prime powers.
    pub fn value(&self) -> BigUint {
        self.entries
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e))
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.entries.iter().try_fold(1u128, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }

    pub fn mul(&self, other: &Factorization) -> Factorization {
        Factorization::collect(self.entries.iter().chain(other.entries.iter()).copied())
    }

    /// Compact form used in hit records: `2^4*3^3*5`.
    pub fn to_record(&self) -> String {
        if self.entries.is_empty() {
            return "1".to_string();
        }
        self.entries
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        for (i, &(p, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Factorization {
    type Err = Error;

    /// Parses `2^4*3^3*5` (spaces around `*` allowed); `1` is the empty factorization.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Factorization::one());
        }
        let mut entries = Vec::new();
        for part in s.split('*') {
            let part = part.trim();
            let (p, e) = match part.split_once('^') {
                Some((p, e)) => (p, e),
                None => (part, "1"),
            };
            let p: u128 = p
                .parse()
                .map_err(|_| Error::Parse(format!("bad prime `{p}` in `{s}`")))?;
            let e: u32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent `{e}` in `{s}`")))?;
            entries.push((p, e));
        }
        Factorization::from_entries(entries)
    }
}

fn small_primes() -> &'static [u128] {
    static PRIMES: OnceLock<Vec<u128>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = 1000usize;
        let mut sieve = vec![true; limit + 1];
        let mut out = Vec::new();
        for i in 2..=limit {
            if sieve[i] {
                out.push(i as u128);
                for j in (i * i..=limit).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        out
    })
}

/// Complete factorization of `n ≥ 1`. `factor(1)` is empty.
pub fn factor(n: u128) -> Factorization {
    assert!(n >= 1, "factor is defined for n >= 1");
    let mut pairs = Vec::new();
    let mut rest = n;
    for &p in small_primes() {
        if p * p > rest {
            break;
        }
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            pairs.push((p, e));
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            pairs.push((m, 1));
            continue;
        }
        let root = isqrt(m);
        if root * root == m {
            stack.push(root);
            stack.push(root);
            continue;
        }
        // Small primes are gone, so m is odd here.
        let d = rho::find_divisor(m);
        stack.push(d);
        stack.push(m / d);
    }
    Factorization::collect(pairs)
}

/// Factors an arbitrary-precision value, rejecting anything wider than 128 bits.
pub fn factor_big(n: &BigUint) -> Result<Factorization> {
    let v = n
        .to_u128()
        .ok_or_else(|| Error::WidthOverflow(n.to_string()))?;
    if v == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    Ok(factor(v))
}

/// Factors a product given as separate cofactors (each within 128 bits).
pub fn factor_product(parts: &[u128]) -> Factorization {
    parts
        .iter()
        .fold(Factorization::one(), |acc, &m| acc.mul(&factor(m)))
}

/// Exponent of the prime `p` in `n`.
pub fn valuation(mut n: u128, p: u128) -> u32 {
    assert!(p >= 2, "valuation base must be at least 2");
    assert!(n >= 1, "valuation is defined for n >= 1");
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// Factorization of `a^n - 1` (`plus = false`) or `a^n + 1` (`plus = true`),
/// split along `x^2 - 1 = (x - 1)(x + 1)` and `x^m ± 1 = (x ± 1)·(…)` for odd
/// `m` so that no single factoring call sees the full width.
pub fn factor_power_pm1(a: u128, n: u32, plus: bool) -> Result<Factorization> {
    let overflow = || Error::WidthOverflow(format!("{a}^{n}{}1", if plus { "+" } else { "-" }));
    let full = a.checked_pow(n).ok_or_else(overflow)?;
    if plus {
        full.checked_add(1).ok_or_else(overflow)?;
    }
    if a < 2 || n == 0 {
        return Err(Error::InvalidArgument(format!("need a >= 2 and n >= 1 (got {a}, {n})")));
    }
    Ok(split_power_pm1(a, n, plus))
}

fn split_power_pm1(a: u128, n: u32, plus: bool) -> Factorization {
    if !plus && n % 2 == 0 {
        let half = n / 2;
        return split_power_pm1(a, half, false).mul(&split_power_pm1(a, half, true));
    }
    let full = a.pow(n);
    let value = if plus { full + 1 } else { full - 1 };
    if n > 1 && n % 2 == 1 {
        let linear = if plus { a + 1 } else { a - 1 };
        return factor(linear).mul(&factor(value / linear));
    }
    factor(value)
}
