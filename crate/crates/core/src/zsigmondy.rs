//! Primitive prime factors of `a^n - 1` and `a^n + 1`.
//!
//! A prime `p | a^n - 1` is primitive when it divides no `a^m - 1` with
//! `1 ≤ m < n`; for `a^n + 1` the condition is on `a^m + 1`. Candidates come
//! from a full factorization and every `m < n` is tested directly; the
//! resulting order certificate is re-checked separately.

use std::fmt;

use crate::error::{Error, Result};
use crate::factorint::{factor, factor_power_pm1, pow_mod};
use crate::report::LemmaReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Minus,
    Plus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Minus => "minus",
            Sign::Plus => "plus",
        })
    }
}

impl std::str::FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" => Ok(Sign::Minus),
            "plus" | "+" => Ok(Sign::Plus),
            _ => Err(Error::Parse(format!("sign must be `minus` or `plus`, got `{s}`"))),
        }
    }
}

/// The listed cases without a primitive prime factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ZsigmondyException {
    /// `2^1 - 1 = 1`
    TwoOne,
    /// `2^6 - 1 = 63 = 3^2 · 7`
    TwoSix,
    /// `n = 2` and `a + 1` a power of two.
    SquareWithPowerOfTwo,
    /// `2^3 + 1 = 9`
    PlusTwoThree,
}

impl ZsigmondyException {
    pub fn tag(self) -> &'static str {
        match self {
            ZsigmondyException::TwoOne => "A_N_2_1",
            ZsigmondyException::TwoSix => "A_N_2_6",
            ZsigmondyException::SquareWithPowerOfTwo => "N2_APLUS1_POW2",
            ZsigmondyException::PlusTwoThree => "PLUS_2_3",
        }
    }

    /// The exception that applies to `(a, n, sign)`, if any.
    pub fn classify(a: u128, n: u32, sign: Sign) -> Option<Self> {
        match sign {
            Sign::Minus if (a, n) == (2, 1) => Some(ZsigmondyException::TwoOne),
            Sign::Minus if (a, n) == (2, 6) => Some(ZsigmondyException::TwoSix),
            Sign::Minus if n == 2 && (a + 1).is_power_of_two() => {
                Some(ZsigmondyException::SquareWithPowerOfTwo)
            }
            Sign::Plus if (a, n) == (2, 3) => Some(ZsigmondyException::PlusTwoThree),
            _ => None,
        }
    }
}

/// A primitive prime together with the data needed to re-check it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderCertificate {
    pub prime: u128,
    /// Multiplicative order of `a` modulo `prime` (`n` for minus, `2n` for plus,
    /// except the degenerate `p = 2` case where `a ≡ -1 ≡ 1`).
    pub order: u32,
    /// `prime ≡ 1` modulo `n` (minus) or `2n` (plus).
    pub congruent: bool,
}

impl OrderCertificate {
    /// Re-checks the certificate from scratch: for minus, `a^n ≡ 1` and
    /// `a^d ≢ 1 (mod p)` for every proper divisor `d` of `n`; for plus,
    /// `a^n ≡ -1 (mod p)`.
    pub fn verify(&self, a: u128, n: u32, sign: Sign) -> bool {
        let p = self.prime;
        let n128 = n as u128;
        let holds = match sign {
            Sign::Minus => {
                pow_mod(a, n128, p) == 1
                    && (1..n).filter(|d| n % d == 0).all(|d| pow_mod(a, d as u128, p) != 1)
            }
            Sign::Plus => pow_mod(a, n128, p) == (p - 1) % p,
        };
        let modulus = match sign {
            Sign::Minus => n128,
            Sign::Plus => 2 * n128,
        };
        holds && self.congruent == (p % modulus == 1 % modulus)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveFactorResult {
    pub a: u128,
    pub n: u32,
    pub sign: Sign,
    pub witnesses: Vec<OrderCertificate>,
    pub exception: Option<ZsigmondyException>,
}

impl PrimitiveFactorResult {
    pub fn exists(&self) -> bool {
        !self.witnesses.is_empty()
    }

    /// Congruence modulus required of witnesses.
    pub fn modulus(&self) -> u128 {
        match self.sign {
            Sign::Minus => self.n as u128,
            Sign::Plus => 2 * self.n as u128,
        }
    }
}

impl fmt::Display for PrimitiveFactorResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exception.is_some() {
            return write!(f, "exception: ({},{})", self.a, self.n);
        }
        if self.witnesses.is_empty() {
            return f.write_str("none");
        }
        let m = self.modulus();
        let parts: Vec<String> = self
            .witnesses
            .iter()
            .map(|w| {
                let rel = if w.congruent { '≡' } else { '≢' };
                format!("{} ({rel}1 mod {m})", w.prime)
            })
            .collect();
        write!(f, "primitive: {}", parts.join(", "))
    }
}

/// All primitive prime factors of `a^n - 1` or `a^n + 1`.
pub fn primitive_prime_factors(a: u128, n: u32, sign: Sign) -> Result<PrimitiveFactorResult> {
    if a < 2 || n < 1 {
        return Err(Error::InvalidArgument(format!("need a >= 2 and n >= 1 (got a={a}, n={n})")));
    }
    let plus = sign == Sign::Plus;
    let value = factor_power_pm1(a, n, plus)?;
    let mut witnesses = Vec::new();
    for p in value.primes() {
        let earlier_hit = (1..n).any(|m| {
            let r = pow_mod(a, m as u128, p);
            match sign {
                Sign::Minus => r == 1 % p,
                Sign::Plus => (r + 1) % p == 0,
            }
        });
        if earlier_hit {
            continue;
        }
        let order = multiplicative_order(a % p, p);
        let modulus = if plus { 2 * n as u128 } else { n as u128 };
        witnesses.push(OrderCertificate {
            prime: p,
            order,
            congruent: p % modulus == 1 % modulus,
        });
    }
    let exception = ZsigmondyException::classify(a, n, sign).filter(|_| witnesses.is_empty());
    Ok(PrimitiveFactorResult {
        a,
        n,
        sign,
        witnesses,
        exception,
    })
}

/// Order of `a` modulo prime `p` with `gcd(a, p) = 1`, via the factorization of `p - 1`.
fn multiplicative_order(a: u128, p: u128) -> u32 {
    if p == 2 {
        return 1;
    }
    let mut order = p - 1;
    for &(q, _) in factor(p - 1).entries() {
        while order % q == 0 && pow_mod(a, order / q, p) == 1 {
            order /= q;
        }
    }
    u32::try_from(order).unwrap_or(u32::MAX)
}

fn grid_check(
    id: &str,
    a_max: u128,
    n_range: std::ops::RangeInclusive<u32>,
    sign: Sign,
) -> Result<LemmaReport> {
    let range = format!("2<=a<={a_max},{}<=n<={}", n_range.start(), n_range.end());
    let mut report = LemmaReport::new(id, range);
    let mut witness_count = 0usize;
    for a in 2..=a_max {
        for n in n_range.clone() {
            let r = primitive_prime_factors(a, n, sign)?;
            let mut bad = Vec::new();
            for w in &r.witnesses {
                witness_count += 1;
                if !w.verify(a, n, sign) {
                    bad.push(format!("uncertified:{}", w.prime));
                } else if !w.congruent {
                    bad.push(format!("incongruent:{}", w.prime));
                }
            }
            if !bad.is_empty() {
                report.fail(format!("(a={a},n={n}):{}", bad.join("/")));
            } else if let Some(ex) = r.exception {
                report.exempt(format!("({a},{n}):{}", ex.tag()));
            } else if !r.exists() {
                report.fail(format!("(a={a},n={n}):no-primitive-prime"));
            }
        }
    }
    report.note(format!("{witness_count} witnesses certified"));
    Ok(report)
}

/// Every `a^n - 1` on the grid has a primitive prime `≡ 1 (mod n)` unless
/// `(a, n) = (2, 6)` or `n = 2` with `a + 1` a power of two.
pub fn check_bang_range(a_max: u128, n_max: u32) -> Result<LemmaReport> {
    let mut report = grid_check("bang", a_max, 2..=n_max, Sign::Minus)?;
    if !report.exempted.is_empty() {
        let list = report.exempted.join(" ");
        report.note(format!("exceptions: {list}"));
    }
    Ok(report)
}

/// Every `a^n + 1` on the grid (`n ≥ 2`) has a primitive prime `≡ 1 (mod 2n)`
/// unless `(a, n) = (2, 3)`.
///
/// At `n = 1` the congruence is modulo 2, which the prime 2 never meets; the
/// `n = 1` column is scanned separately and described in the notes.
pub fn check_lemma_c_range(a_max: u128, n_max: u32) -> Result<LemmaReport> {
    let mut report = grid_check("lemma-c", a_max, 2..=n_max.max(1), Sign::Plus)?;
    if !report.exempted.is_empty() {
        let list = report.exempted.join(" ");
        report.note(format!("exceptions: {list}"));
    }
    let mut degenerate = Vec::new();
    for a in 2..=a_max {
        let r = primitive_prime_factors(a, 1, Sign::Plus)?;
        if !r.witnesses.iter().any(|w| w.congruent) {
            degenerate.push(format!("({a},1)"));
        }
    }
    if !degenerate.is_empty() {
        report.note(format!(
            "n=1 column (outside grid): a+1 is a power of two, so the only prime factor is 2 and 2≢1 (mod 2): {}",
            degenerate.join(" ")
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listed_examples() {
        let r = primitive_prime_factors(2, 6, Sign::Minus).unwrap();
        assert!(!r.exists());
        assert_eq!(r.exception, Some(ZsigmondyException::TwoSix));

        let r = primitive_prime_factors(2, 3, Sign::Plus).unwrap();
        assert!(!r.exists());
        assert_eq!(r.exception, Some(ZsigmondyException::PlusTwoThree));
        assert_eq!(r.to_string(), "exception: (2,3)");

        let r = primitive_prime_factors(2, 4, Sign::Minus).unwrap();
        assert_eq!(r.witnesses.iter().map(|w| w.prime).collect::<Vec<_>>(), vec![5]);
        assert!(r.witnesses[0].congruent);
        assert_eq!(r.to_string(), "primitive: 5 (≡1 mod 4)");

        let r = primitive_prime_factors(2, 1, Sign::Plus).unwrap();
        assert_eq!(r.witnesses[0].prime, 3);
        assert!(r.witnesses[0].congruent);
    }

    #[test]
    fn degenerate_two_one() {
        let r = primitive_prime_factors(2, 1, Sign::Minus).unwrap();
        assert!(!r.exists());
        assert_eq!(r.exception, Some(ZsigmondyException::TwoOne));
    }

    #[test]
    fn power_of_two_neighbour_is_exception() {
        let r = primitive_prime_factors(3, 2, Sign::Minus).unwrap();
        assert_eq!(r.exception, Some(ZsigmondyException::SquareWithPowerOfTwo));
        let r = primitive_prime_factors(4, 2, Sign::Minus).unwrap();
        assert_eq!(r.exception, None);
        assert_eq!(r.witnesses[0].prime, 5);
    }

    #[test]
    fn plus_n1_with_odd_base_has_incongruent_two() {
        let r = primitive_prime_factors(3, 1, Sign::Plus).unwrap();
        assert_eq!(r.witnesses.len(), 1);
        assert_eq!(r.witnesses[0].prime, 2);
        assert!(!r.witnesses[0].congruent);
        assert!(r.witnesses[0].verify(3, 1, Sign::Plus));
    }

    #[test]
    fn certificates_catch_tampering() {
        let r = primitive_prime_factors(10, 6, Sign::Minus).unwrap();
        // 10^6 - 1 = 3^3 * 7 * 11 * 13 * 37; primitive: 7, 13
        let primes: Vec<u128> = r.witnesses.iter().map(|w| w.prime).collect();
        assert_eq!(primes, vec![7, 13]);
        let mut forged = r.witnesses[0];
        forged.prime = 11;
        assert!(!forged.verify(10, 6, Sign::Minus));
    }

    #[test]
    fn width_overflow_is_rejected() {
        assert!(matches!(
            primitive_prime_factors(2, 128, Sign::Minus),
            Err(Error::WidthOverflow(_))
        ));
        assert!(primitive_prime_factors(1, 3, Sign::Minus).is_err());
    }

    #[test]
    fn small_grids_pass() {
        let bang = check_bang_range(8, 10).unwrap();
        assert!(bang.passed(), "{bang}");
        let c = check_lemma_c_range(8, 8).unwrap();
        assert!(c.passed(), "{c}");
        assert_eq!(c.exempted, vec!["(2,3):PLUS_2_3".to_string()]);
    }
}
