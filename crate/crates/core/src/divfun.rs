//! Sums over the three divisor classes and the biunitary closed forms.
//!
//! For a prime power the biunitary divisors of `p^e` are all `p^c` except
//! `c = e/2` when `e` is even, which gives
//!
//! ```text
//! σ**(p^e) = (p^{e+1} - 1)/(p - 1)              e odd
//!          = (p^{e+1} - 1)/(p - 1) - p^{e/2}    e even
//! ```
//!
//! or, writing `e = 2s - 1 - δ` with `δ ∈ {0, 1}`,
//! `σ**(p^e) = (p^{s-δ} - 1)(p^s + 1)/(p - 1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::factorint::{factor, factor_product, is_prime, valuation, Factorization};
use crate::ratio::ExactRatio;

/// Upper bound on `n` for explicit divisor enumeration.
pub const LIST_DIVISORS_LIMIT: u64 = 1_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivisorClass {
    /// Every divisor (σ).
    All,
    /// Unitary divisors (σ*).
    Unitary,
    /// Biunitary divisors (σ**).
    Biunitary,
}

impl DivisorClass {
    pub const ALL_CLASSES: [DivisorClass; 3] =
        [DivisorClass::All, DivisorClass::Unitary, DivisorClass::Biunitary];

    pub fn tag(self) -> &'static str {
        match self {
            DivisorClass::All => "ALL",
            DivisorClass::Unitary => "UNITARY",
            DivisorClass::Biunitary => "BIUNITARY",
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for DivisorClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "ALL" | "SIGMA" => Ok(DivisorClass::All),
            "UNITARY" => Ok(DivisorClass::Unitary),
            "BIUNITARY" => Ok(DivisorClass::Biunitary),
            _ => Err(Error::Parse(format!("unknown divisor class `{s}`"))),
        }
    }
}

/// `e = 2s - 1 - δ` with `δ ∈ {0, 1}`; returns `(s, δ)`.
pub fn split_exponent(e: u32) -> (u32, u32) {
    let delta = (e + 1) % 2;
    ((e + 1 + delta) / 2, delta)
}

pub fn join_exponent(s: u32, delta: u32) -> u32 {
    2 * s - 1 - delta
}

/// Closed form of the class sum at `p^e`. Does not check primality.
pub fn sigma_prime_power(p: u128, e: u32, class: DivisorClass) -> BigUint {
    let pb = BigUint::from(p);
    if e == 0 {
        return BigUint::one();
    }
    match class {
        DivisorClass::All => (pb.pow(e + 1) - 1u32) / (&pb - 1u32),
        DivisorClass::Unitary => pb.pow(e) + 1u32,
        DivisorClass::Biunitary => {
            let full = (pb.pow(e + 1) - 1u32) / (&pb - 1u32);
            if e % 2 == 1 {
                full
            } else {
                full - pb.pow(e / 2)
            }
        }
    }
}

/// σ**(p^e) for a prime `p` and `e ≥ 1`.
pub fn sigma_bu_prime_power(p: u128, e: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidArgument("exponent must be at least 1".into()));
    }
    Ok(sigma_prime_power(p, e, DivisorClass::Biunitary))
}

/// σ**(p^e) through the single-formula route `(p^{s-δ} - 1)(p^s + 1)/(p - 1)`.
pub fn sigma_bu_unified(p: u128, e: u32) -> BigUint {
    let (s, delta) = split_exponent(e);
    let pb = BigUint::from(p);
    (pb.pow(s - delta) - 1u32) * (pb.pow(s) + 1u32) / (&pb - 1u32)
}

/// 128-bit closed form for the sieve; `None` on overflow.
pub fn sigma_prime_power_u128(p: u128, e: u32, class: DivisorClass) -> Option<u128> {
    if e == 0 {
        return Some(1);
    }
    match class {
        DivisorClass::Unitary => p.checked_pow(e)?.checked_add(1),
        DivisorClass::All | DivisorClass::Biunitary => {
            // 1 + p + … + p^e accumulated term by term.
            let mut sum: u128 = 1;
            let mut term: u128 = 1;
            for c in 1..=e {
                term = term.checked_mul(p)?;
                if class == DivisorClass::Biunitary && 2 * c == e {
                    continue;
                }
                sum = sum.checked_add(term)?;
            }
            Some(sum)
        }
    }
}

/// Multiplicative extension of the per-prime-power closed form.
pub fn divisor_sum(f: &Factorization, class: DivisorClass) -> BigUint {
    f.entries()
        .iter()
        .fold(BigUint::one(), |acc, &(p, e)| acc * sigma_prime_power(p, e, class))
}

/// The reduced fraction `divisor_sum(f, class) / n`.
pub fn abundancy(f: &Factorization, class: DivisorClass) -> ExactRatio {
    ExactRatio::new(divisor_sum(f, class), f.value())
}

pub fn omega(f: &Factorization) -> usize {
    f.entries().len()
}

/// Greatest common unitary divisor: the product of `p^{v_p(a)}` over primes
/// with `v_p(a) = v_p(b) ≥ 1`.
pub fn unitary_gcd(a: u128, b: u128) -> u128 {
    assert!(a >= 1 && b >= 1, "unitary_gcd is defined on positive integers");
    factor(a)
        .entries()
        .iter()
        .filter(|&&(p, e)| valuation(b, p) == e)
        .map(|&(p, e)| p.pow(e))
        .product()
}

/// Whether `d` is a biunitary divisor of `n`, i.e. `gcd₁(d, n/d) = 1`.
pub fn is_biunitary_divisor(d: u128, n: u128) -> Result<bool> {
    if d == 0 || n == 0 || n % d != 0 {
        return Err(Error::NotADivisor { d, n });
    }
    Ok(unitary_gcd(d, n / d) == 1)
}

/// All divisors of the class in ascending order. This is the brute-force
/// reference for the closed forms; biunitary membership is decided through
/// [`is_biunitary_divisor`], not through the exponent rule.
pub fn list_divisors(f: &Factorization, class: DivisorClass) -> Result<Vec<u64>> {
    let n = f
        .to_u128()
        .filter(|&n| n <= LIST_DIVISORS_LIMIT as u128)
        .ok_or_else(|| Error::ScaleGuard {
            n: f.value().to_string(),
            limit: LIST_DIVISORS_LIMIT,
        })?;
    let mut divisors: Vec<u64> = vec![1];
    for &(p, e) in f.entries() {
        let p = p as u64;
        let mut next = Vec::with_capacity(divisors.len() * (e as usize + 1));
        for &d in &divisors {
            let mut pk = 1u64;
            for c in 0..=e {
                let keep = match class {
                    DivisorClass::Unitary => c == 0 || c == e,
                    _ => true,
                };
                if keep {
                    next.push(d * pk);
                }
                pk *= p;
            }
        }
        divisors = next;
    }
    if class == DivisorClass::Biunitary {
        let mut kept = Vec::with_capacity(divisors.len());
        for d in divisors {
            if is_biunitary_divisor(d as u128, n)? {
                kept.push(d);
            }
        }
        divisors = kept;
    }
    divisors.sort_unstable();
    Ok(divisors)
}

/// Factorization of σ**(p^e) assembled from the two cofactors
/// `(p^{s-δ} - 1)/(p - 1)` and `p^s + 1`.
pub fn factor_sigma_bu_prime_power(p: u128, e: u32) -> Result<Factorization> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Ok(Factorization::one());
    }
    let (s, delta) = split_exponent(e);
    let overflow = || Error::WidthOverflow(format!("σ**({p}^{e}) cofactor {p}^{s}+1"));
    let ps = p.checked_pow(s).ok_or_else(overflow)?;
    let plus = ps.checked_add(1).ok_or_else(overflow)?;
    let minus = (p.pow(s - delta) - 1) / (p - 1);
    Ok(factor_product(&[minus, plus]))
}
