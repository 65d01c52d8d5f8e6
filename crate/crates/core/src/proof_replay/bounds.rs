//! The eight symbolic lower bounds for `σ**(N₁)/N₁ > 2` and
//! `σ**(N₂)/N₂ > 3/2`, evaluated exactly at every parameter in range.
//!
//! Each family checks its final displayed expression. Where the displayed
//! chain has a sharper middle step (the extremal admissible prime substituted
//! into the middle expression), that step is checked as well and reported
//! with a `chain:` prefix.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::factorint::{is_prime, primality_is_proven};
use crate::ratio::ExactRatio;
use crate::report::LemmaReport;

pub const BRANCH_BOUND_LIMIT: u32 = 64;

fn p2(k: u32) -> BigUint {
    BigUint::from(1u32) << k
}

fn p3(k: u32) -> BigUint {
    BigUint::from(3u32).pow(k)
}

fn q(n: BigUint, d: BigUint) -> ExactRatio {
    ExactRatio::new(n, d)
}

/// Primality of a value up to 128 bits, counting decisions that are not proofs.
struct PrimeOracle {
    unproven: Vec<u128>,
}

impl PrimeOracle {
    fn check(&mut self, n: u128) -> bool {
        let p = is_prime(n);
        if p && !primality_is_proven(n) {
            self.unproven.push(n);
        }
        p
    }
}

fn two() -> ExactRatio {
    ExactRatio::integer(2u32)
}

fn three_halves() -> ExactRatio {
    ExactRatio::new(3u32, 2u32)
}

/// (a): δ = 0, two primes up to `2^s - 1`.
pub fn family_a(s_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(a)", format!("4<=s<={s_max},δ=0"));
    for s in 4..=s_max {
        let x1 = p2(s) - 1u32;
        let v = q(
            (p2(2 * s) - 1u32) * (&x1 * &x1 + 1u32),
            p2(2 * s - 1) * &x1 * &x1,
        );
        if v <= two() {
            r.fail(format!("s={s}"));
        }
    }
    r
}

/// (b): `5^{e₂} ‖ N`; the display's 2-exponent `η` is read as `δ`.
pub fn family_b(s_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(b)", format!("e=2s-1-δ>=7,s<={s_max}"));
    for s in 4..=s_max {
        for delta in 0..=1 {
            if 2 * s - 1 - delta < 7 {
                continue;
            }
            let v = q(
                BigUint::from(26u32) * (p2(s - delta) - 1u32) * (p2(s) + 1u32),
                BigUint::from(25u32) * p2(2 * s - 1 - delta),
            );
            if v <= two() {
                r.fail(format!("s={s},δ={delta}"));
            }
        }
    }
    r.note("the exponent written η in this display is the 2-adic δ");
    r
}

/// (c′): `5 < p₂ ≤ √(2^s - 3)`, so `s ≥ 6` for an admissible prime to exist.
pub fn family_c_prime(s_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(c')", format!("6<=s<={s_max}"));
    let mut chain_ok = 0;
    for s in 6..=s_max {
        let half = p2(s - 1) - 1u32;
        let display = q(&half * &half * (p2(s) - 2u32), p2(2 * s - 3) * (p2(s) - 3u32));
        if display <= two() {
            r.fail(format!("s={s}"));
        }
        // Middle step at p₂² = 2^s - 3: (p²+1)/p² = (2^s-2)/(2^s-3).
        let chain = q(&half * (p2(s) + 1u32) * (p2(s) - 2u32), p2(2 * s - 2) * (p2(s) - 3u32));
        if chain <= two() {
            r.fail(format!("chain:s={s}"));
        } else {
            chain_ok += 1;
        }
    }
    r.note(format!(
        "final display equals 2(x-2)^3/(x^2(x-3)) with x=2^s, below 2 for every s; the middle step with p₂²≤2^s-3 exceeds 2 at all {chain_ok} values of s"
    ));
    r
}

/// (d): `4 | s`, `δ = 1`, `p₂ ∈ {2^{s-1} - 1, 2^s + 1}` prime, `e₂ ≠ 2`.
pub fn family_d(s_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(d)", format!("4|s,δ=1,8<=s<={s_max}"));
    let mut oracle = PrimeOracle { unproven: Vec::new() };
    let mut cases = Vec::new();
    for s in (8..=s_max).step_by(4) {
        let cands = [(1u128 << (s - 1)) - 1, (1u128 << s) + 1];
        let primes: Vec<u128> = cands.into_iter().filter(|&p| oracle.check(p)).collect();
        if primes.is_empty() {
            continue;
        }
        let display = q((p2(s - 1) - 1u32) * (p2(s) + 2u32), p2(2 * s - 2));
        if display <= two() {
            r.fail(format!("s={s}"));
        }
        for &p in &primes {
            cases.push(format!("(s={s},p={p})"));
            let pb = BigUint::from(p);
            let chain = q((p2(s - 1) - 1u32) * (p2(s) + 1u32) * (&pb + 1u32), p2(2 * s - 2) * &pb);
            if chain <= two() {
                r.fail(format!("chain:s={s},p={p}"));
            }
            if p % 5 != 2 {
                r.fail(format!("side:p={p}≢2(mod5)"));
            }
        }
    }
    r.note(format!("admissible cases {}", cases.join(" ")));
    r.note("final display equals 2(x^2-4)/x^2 with x=2^s, below 2; the middle step exceeds 2 only for p₂ = 2^{s-1}-1");
    if !oracle.unproven.is_empty() {
        r.note(format!("primality by BPSW (not proven) for {:?}", oracle.unproven));
    }
    r
}

/// (A): `η = 0`, `5 < p₁ ≤ (3^t - 1)/2`.
pub fn family_a_upper(t_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(A)", format!("3<=t<={t_max},η=0"));
    for t in 3..=t_max {
        let y1 = p3(t) - 1u32;
        let v = q(
            (p3(2 * t) - 1u32) * (&y1 * &y1 + 4u32),
            BigUint::from(2u32) * p3(2 * t - 1) * &y1 * &y1,
        );
        if v <= three_halves() {
            r.fail(format!("t={t}"));
        }
    }
    r
}

/// (B): `5^{e₁} ‖ N`, evaluated with `3^{t-η} - 1` in the numerator.
pub fn family_b_upper(t_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(B)", format!("f=2t-1-η>=5,t<={t_max}"));
    let mut literal_fails = Vec::new();
    for t in 3..=t_max {
        for eta in 0..=1 {
            if 2 * t - 1 - eta < 5 {
                continue;
            }
            let denom = BigUint::from(50u32) * p3(2 * t - 1 - eta);
            let v = q(BigUint::from(26u32) * (p3(t - eta) - 1u32) * (p3(t) + 1u32), denom.clone());
            if v <= three_halves() {
                r.fail(format!("t={t},η={eta}"));
            }
            let literal = q(BigUint::from(26u32) * (p3(t - 1) - 1u32) * (p3(t) + 1u32), denom);
            if literal <= three_halves() {
                literal_fails.push(format!("(t={t},η={eta})"));
            }
        }
    }
    if !literal_fails.is_empty() {
        r.note(format!(
            "the printed final numerator 3^{{t-1}}-1 drops below 3/2 whenever η=0 ({} cases, first {}); the middle expression's 3^{{t-η}}-1 is used",
            literal_fails.len(),
            literal_fails[0]
        ));
    }
    r
}

/// (C): `5 < p₁ ≤ √((3^{t-η} - 1)/2)`, needing `t - η ≥ 5` for `p₁ = 7`.
pub fn family_c_upper(t_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(C)", format!("t-η>=5,t<={t_max}"));
    for t in 5..=t_max {
        for eta in 0..=1 {
            if t - eta < 5 {
                continue;
            }
            let a = p3(t - eta);
            let v = q(
                (&a - 1u32) * (p3(t) + 1u32) * (&a + 1u32),
                BigUint::from(2u32) * p3(2 * t - 1 - eta) * (&a - 1u32),
            );
            if v <= three_halves() {
                r.fail(format!("t={t},η={eta}"));
            }
        }
    }
    r
}

/// (D): `4 | t`, `η = 1`, `p₁ = (3^{t-1} - 1)/2` prime.
pub fn family_d_upper(t_max: u32) -> LemmaReport {
    let mut r = LemmaReport::new("bounds(D)", format!("4|t,η=1,4<=t<={t_max}"));
    let mut oracle = PrimeOracle { unproven: Vec::new() };
    let mut cases = Vec::new();
    for t in (4..=t_max).step_by(4) {
        let p1 = (3u128.pow(t - 1) - 1) / 2;
        if !oracle.check(p1) {
            continue;
        }
        cases.push(format!("(t={t},p={p1})"));
        let a = p3(t - 1);
        let v = q(
            (&a - 1u32) * (p3(t) + 1u32) * (&a + 1u32),
            BigUint::from(2u32) * p3(2 * t - 2) * (&a - 1u32),
        );
        if v <= three_halves() {
            r.fail(format!("t={t}"));
        }
        if ((p1 % 5) * (p1 % 5) + 1) % 5 != 0 {
            r.fail(format!("side:5∤{p1}^2+1"));
        }
    }
    r.note(format!("admissible cases {}", cases.join(" ")));
    r.note("these p₁ are ≡ 3 (mod 5), not 2; the needed fact 5 | p₁²+1 is checked instead");
    if !oracle.unproven.is_empty() {
        r.note(format!("primality by BPSW (not proven) for {:?}", oracle.unproven));
    }
    r
}

/// All eight families, one report each.
pub fn branch_bound_reports(s_max: u32, t_max: u32) -> Result<Vec<LemmaReport>> {
    if s_max > BRANCH_BOUND_LIMIT || t_max > BRANCH_BOUND_LIMIT {
        return Err(Error::InvalidArgument(format!(
            "s_max and t_max must be at most {BRANCH_BOUND_LIMIT} (got {s_max}, {t_max})"
        )));
    }
    Ok(vec![
        family_a(s_max),
        family_b(s_max),
        family_c_prime(s_max),
        family_d(s_max),
        family_a_upper(t_max),
        family_b_upper(t_max),
        family_c_upper(t_max),
        family_d_upper(t_max),
    ])
}

/// The eight families folded into one report.
pub fn check_branch_bounds(s_max: u32, t_max: u32) -> Result<LemmaReport> {
    let parts = branch_bound_reports(s_max, t_max)?;
    Ok(LemmaReport::combine(
        "branch-bounds",
        &format!("s<={s_max},t<={t_max}"),
        &parts,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_a_at_four() {
        let v = q(BigUint::from(255u32 * 226), BigUint::from(128u32 * 225));
        assert!(v > two());
        assert!(family_a(4).passed());
    }

    #[test]
    fn family_b_upper_first_case() {
        // t = 3, η = 0: 26·26·28 / (50·3^5)
        let v = q(BigUint::from(26u32 * 26 * 28), BigUint::from(50u32 * 243));
        assert!(v > three_halves());
        assert!(family_b_upper(3).passed());
    }

    #[test]
    fn side_condition_residue() {
        assert_eq!(17 % 5, 2);
        assert_eq!(((1u128 << 7) - 1) % 5, 2);
    }

    #[test]
    fn expected_verdicts() {
        let reports = branch_bound_reports(64, 64).unwrap();
        let verdict: Vec<(String, bool)> = reports.iter().map(|r| (r.lemma_id.clone(), r.passed())).collect();
        let expect = [
            ("bounds(a)", true),
            ("bounds(b)", true),
            ("bounds(c')", false),
            ("bounds(d)", false),
            ("bounds(A)", true),
            ("bounds(B)", true),
            ("bounds(C)", true),
            ("bounds(D)", true),
        ];
        for (got, want) in verdict.iter().zip(expect) {
            assert_eq!((got.0.as_str(), got.1), want);
        }
        let d = &reports[3];
        assert!(d.counterexamples.contains(&"chain:s=8,p=257".to_string()));
        assert!(d.counterexamples.contains(&"chain:s=16,p=65537".to_string()));
        assert!(!d.counterexamples.iter().any(|c| c.starts_with("chain:s=20")));
        assert!(!reports[2].counterexamples.iter().any(|c| c.starts_with("chain:")));
        assert!(branch_bound_reports(65, 10).is_err());
    }
}
