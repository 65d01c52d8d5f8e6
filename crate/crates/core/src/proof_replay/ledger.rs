//! Every displayed abundancy, quotient bound, divisibility step and
//! factorization used in the case analysis, as a reviewable table.

use std::fmt;

use num_bigint::BigUint;

use crate::divfun::{abundancy, divisor_sum, DivisorClass};
use crate::error::{Error, Result};
use crate::factorint::{factor_power_pm1, Factorization};
use crate::ratio::ExactRatio;
use crate::report::LemmaReport;

/// Free exponents in divisibility claims range over `1..=FREE_EXPONENT_MAX`.
pub const FREE_EXPONENT_MAX: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparator {
    Gt,
    Lt,
    Eq,
}

impl Comparator {
    pub fn holds(self, lhs: &ExactRatio, rhs: &ExactRatio) -> bool {
        match self {
            Comparator::Gt => lhs > rhs,
            Comparator::Lt => lhs < rhs,
            Comparator::Eq => lhs == rhs,
        }
    }
}

impl fmt::Display for Comparator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparator::Gt => ">",
            Comparator::Lt => "<",
            Comparator::Eq => "=",
        })
    }
}

/// What a ledger line evaluates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LedgerExpr {
    /// σ**(n)/n for a fully specified `n`.
    Abundancy(Factorization),
    /// A plain quotient of integer products.
    Quotient { numer: Vec<u64>, denom: Vec<u64> },
}

impl LedgerExpr {
    pub fn value(&self) -> ExactRatio {
        match self {
            LedgerExpr::Abundancy(f) => abundancy(f, DivisorClass::Biunitary),
            LedgerExpr::Quotient { numer, denom } => {
                let prod = |xs: &[u64]| xs.iter().fold(BigUint::from(1u32), |acc, &x| acc * x);
                ExactRatio::new(prod(numer), prod(denom))
            }
        }
    }
}

impl fmt::Display for LedgerExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join("*");
        match self {
            LedgerExpr::Abundancy(n) => write!(f, "σ**({0})/({0})", n.to_record()),
            LedgerExpr::Quotient { numer, denom } => write!(f, "({})/({})", join(numer), join(denom)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub id: String,
    pub expr: LedgerExpr,
    /// Absent where only an inequality is displayed.
    pub claimed_ratio: Option<ExactRatio>,
    pub comparator: Comparator,
    pub bound: ExactRatio,
}

impl LedgerEntry {
    pub fn check(&self) -> LemmaReport {
        let mut report = LemmaReport::new(format!("ledger:{}", self.id), format!("{} {} {}", self.expr, self.comparator, self.bound));
        let value = self.expr.value();
        if let Some(claimed) = &self.claimed_ratio {
            if &value != claimed {
                report.fail(format!("value={value}≠{claimed}"));
            }
        }
        if !self.comparator.holds(&value, &self.bound) {
            report.fail(format!("value={value}"));
        }
        report.note(format!("value {value}"));
        report
    }
}

/// `(id, n, displayed fraction, comparator, bound)`
const ABUNDANCY_TABLE: &[(&str, &str, Option<&str>, Comparator, &str)] = {
    use Comparator::*;
    &[
        ("e3", "2^3*3^4*5", Some("28/9"), Gt, "3"),
        ("e5-a", "2^5*3^4*7", Some("28/9"), Gt, "3"),
        ("e5-b", "2^5*3^6*5^2*7^2", Some("6929/2268"), Gt, "3"),
        ("e6-a", "2^6*3^4*7*17", Some("28/9"), Gt, "3"),
        ("e6-b", "2^6*3^4*5^2*7", Some("6188/2025"), Gt, "3"),
        ("e6-c", "2^6*3^6*5*7^2", Some("45305/13608"), Gt, "3"),
        ("e6-d", "2^6*3^6*5^2*7^2*13", Some("9061/2916"), Gt, "3"),
        ("f3-a", "2^8*3^3*5", Some("55/16"), Gt, "3"),
        ("f3-b", "2^8*3^3*5^2*13", Some("77/24"), Gt, "3"),
        ("f3-c", "2^8*3^3*5^2*13^2*17", Some("165/52"), Gt, "3"),
        ("f4-a", "2^8*3^4*7", Some("55/18"), Gt, "3"),
        ("f4-b", "2^8*3^4*5*7^2", Some("275/84"), Gt, "3"),
        ("f4-c", "2^8*3^4*5^2*7^2*13", Some("55/18"), Gt, "3"),
        ("e8", "2^8*3^6*5", Some("5863/1728"), Gt, "3"),
        ("e10", "2^10*3^6*5^2*13^2", None, Gt, "3"),
        ("f8", "2^8*3^8*5^2*13^2", None, Gt, "3"),
        ("e8-f6", "2^8*3^6*7", Some("29315/9072"), Gt, "3"),
        ("e12-a", "2^12*3^6*7", Some("22919/6912"), Gt, "3"),
        ("e12-b", "2^12*3^6*5^2*7^2", Some("297947/96768"), Gt, "3"),
        ("e4-f3", "2^4*3^3*5", Some("3"), Eq, "3"),
        ("e4-f6-a", "2^4*3^6*5*13", Some("287/90"), Gt, "3"),
        ("e4-f6-b", "2^4*3^6*5*13^2*17", Some("41/13"), Gt, "3"),
        ("e4-f6-c", "2^4*3^6*5^4*13^2", Some("4879/1625"), Gt, "3"),
    ]
};

/// `(id, numerator factors, denominator factors, comparator, bound)`
type QuotientRow = (&'static str, &'static [u64], &'static [u64], Comparator, &'static str);

const QUOTIENT_TABLE: &[QuotientRow] = &[
    ("f18", &[27, 3, 7, 127, 131], &[16, 2, 6, 126, 130], Comparator::Lt, "3"),
    ("f15-17", &[27, 3, 31, 37, 41], &[16, 2, 30, 36, 40], Comparator::Lt, "3"),
];

pub fn ledger_entries() -> Vec<LedgerEntry> {
    let parse_ratio = |s: &str| s.parse::<ExactRatio>().expect("ledger table fraction");
    let mut out: Vec<LedgerEntry> = ABUNDANCY_TABLE
        .iter()
        .map(|&(id, n, claimed, comparator, bound)| LedgerEntry {
            id: id.to_string(),
            expr: LedgerExpr::Abundancy(n.parse().expect("ledger table factorization")),
            claimed_ratio: claimed.map(parse_ratio),
            comparator,
            bound: parse_ratio(bound),
        })
        .collect();
    out.extend(QUOTIENT_TABLE.iter().map(|&(id, numer, denom, comparator, bound)| LedgerEntry {
        id: id.to_string(),
        expr: LedgerExpr::Quotient {
            numer: numer.to_vec(),
            denom: denom.to_vec(),
        },
        claimed_ratio: None,
        comparator,
        bound: parse_ratio(bound),
    }));
    out
}

/// An exponent in a divisibility claim: fixed, or free over `1..=FREE_EXPONENT_MAX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Exp {
    Fixed(u32),
    Free,
}

/// Parses `3^4*7^2*5^x`; a letter exponent is free.
fn parse_template(s: &str) -> Result<Vec<(u128, Exp)>> {
    s.split('*')
        .map(|part| {
            let (p, e) = part.split_once('^').unwrap_or((part, "1"));
            let p: u128 = p.parse().map_err(|_| Error::Parse(format!("bad base in `{s}`")))?;
            let e = if e.chars().all(|c| c.is_ascii_alphabetic()) {
                Exp::Free
            } else {
                Exp::Fixed(e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?)
            };
            Ok((p, e))
        })
        .collect()
}

/// `(id, q, k, template)`: `q^k | σ**(template)` for all free exponents.
const DIVISIBILITY_TABLE: &[(&str, u128, u32, &str)] = &[
    ("e2-5sq", 5, 2, "2^2*3^3"),
    ("e3-13", 13, 1, "5^2"),
    ("e5-5", 5, 1, "7^2"),
    ("e5-f4", 2, 6, "3^4*7^2*5^x"),
    ("e6-5", 5, 1, "17^2"),
    ("e6-5sq", 5, 2, "7^2"),
    ("e6-f4", 2, 7, "3^4*7^2*17^x*5^y"),
    ("e6-5cube", 5, 3, "7^2*13^2"),
    ("f3-5", 5, 1, "3^3"),
    ("f3-13", 13, 1, "5^2"),
    ("f3-5cube", 5, 3, "3^3*13^2*17^2"),
    ("f4-7", 7, 1, "3^4"),
    ("f4-5cube", 5, 3, "7^2*13^2"),
    ("e8-5", 5, 1, "2^8"),
    ("e8-5cube", 5, 3, "2^8*7^2"),
    ("e12-7", 7, 1, "2^12"),
    ("e16-17", 17, 1, "2^16"),
    ("e16-19", 19, 1, "2^16"),
    ("e4-f4", 2, 5, "3^4*7^x"),
    ("e4-f3-13", 2, 5, "3^3*5^2*13^x"),
    ("e4-f6-13", 13, 1, "3^6"),
    ("e4-f6-5sq", 5, 2, "13^2*17^2"),
    ("e4-f8-61", 61, 1, "3^8"),
    ("e4-f8-4", 2, 2, "3^8"),
    ("e4-f8", 2, 5, "3^8*5^2*13^x*61^y"),
    ("e4-f7-41", 41, 1, "3^7"),
    ("e4-f7", 2, 5, "3^7*5^2*13^x*41^y"),
    ("e4-f6-41", 41, 1, "3^6"),
    ("e4-f5-7", 7, 1, "3^5"),
    ("e4-f5", 2, 5, "3^5*5^2*13^x*7^y"),
    ("e4-f7-5", 5, 1, "3^7"),
    ("e4-f8-5", 5, 1, "3^8"),
    ("e4-f10-5", 5, 1, "3^10"),
    ("e4-f11-5", 5, 1, "3^11"),
    ("e4-f12-547", 547, 1, "3^12"),
    ("e4-f9-11", 11, 1, "3^9"),
    ("e4-f9-61", 61, 1, "3^9"),
    ("e4-f9-4", 2, 2, "3^9"),
    ("e4-f5-single", 2, 5, "3^5*7"),
];

fn check_divisibility(id: &str, q: u128, k: u32, template: &str) -> Result<LemmaReport> {
    let parts = parse_template(template)?;
    let free = parts.iter().filter(|(_, e)| *e == Exp::Free).count() as u32;
    let range = if free == 0 {
        format!("{q}^{k}|σ**({template})")
    } else {
        format!("{q}^{k}|σ**({template}),free∈[1,{FREE_EXPONENT_MAX}]")
    };
    let mut report = LemmaReport::new(format!("ledger:{id}"), range);
    let qb = BigUint::from(q);
    // v_q of σ**(p^e), cached per part and exponent.
    let val = |p: u128, e: u32| -> u32 {
        let mut v = divisor_sum(
            &Factorization::from_entries(vec![(p, e)]).expect("template base is prime"),
            DivisorClass::Biunitary,
        );
        let mut c = 0;
        while (&v % &qb) == BigUint::from(0u32) {
            v /= &qb;
            c += 1;
        }
        c
    };
    let table: Vec<Vec<u32>> = parts
        .iter()
        .map(|&(p, e)| match e {
            Exp::Fixed(e) => vec![val(p, e)],
            Exp::Free => (1..=FREE_EXPONENT_MAX).map(|e| val(p, e)).collect(),
        })
        .collect();
    let mut idx = vec![0usize; parts.len()];
    loop {
        let v: u32 = idx.iter().zip(&table).map(|(&i, t)| t[i]).sum();
        if v < k {
            let exps: Vec<String> = idx
                .iter()
                .zip(&parts)
                .map(|(&i, &(p, e))| match e {
                    Exp::Fixed(e) => format!("{p}^{e}"),
                    Exp::Free => format!("{p}^{}", i + 1),
                })
                .collect();
            report.fail(format!("{}:v{q}={v}", exps.join("*")));
        }
        // Odometer over the free positions.
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(report);
            }
            if idx[pos] + 1 < table[pos].len() {
                idx[pos] += 1;
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum FactorTarget {
    /// σ** of a template without free exponents.
    Sigma(&'static str),
    /// `a^n + 1`
    PowerPlusOne(u128, u32),
}

const FACTORIZATION_TABLE: &[(&str, FactorTarget, &str)] = &[
    ("sigma-2^5", FactorTarget::Sigma("2^5"), "3^2*7"),
    ("sigma-2^6", FactorTarget::Sigma("2^6"), "7*17"),
    ("sigma-2^8", FactorTarget::Sigma("2^8"), "3^2*5*11"),
    ("sigma-5^2", FactorTarget::Sigma("5^2"), "2*13"),
    ("sigma-7^2", FactorTarget::Sigma("7^2"), "2*5^2"),
    ("sigma-3^3", FactorTarget::Sigma("3^3"), "2^3*5"),
    ("sigma-3^4", FactorTarget::Sigma("3^4"), "2^4*7"),
    ("sigma-3^5", FactorTarget::Sigma("3^5"), "2^2*7*13"),
    ("sigma-3^7", FactorTarget::Sigma("3^7"), "2^4*5*41"),
    ("sigma-3^8", FactorTarget::Sigma("3^8"), "2^5*5*61"),
    ("sigma-3^13", FactorTarget::Sigma("3^13"), "2^2*547*1093"),
    ("sigma-41", FactorTarget::Sigma("41"), "2*3*7"),
    ("sigma-2160", FactorTarget::Sigma("2^4*3^3*5"), "2^4*3^4*5"),
    ("61^5+1", FactorTarget::PowerPlusOne(61, 5), "2*11*31*1238411"),
];

fn check_factorization(id: &str, target: FactorTarget, expected: &str) -> Result<LemmaReport> {
    let expected: Factorization = expected.parse()?;
    let (label, actual) = match target {
        FactorTarget::Sigma(t) => {
            let n: Factorization = t.parse()?;
            let f = crate::factorint::factor_big(&divisor_sum(&n, DivisorClass::Biunitary))?;
            (format!("σ**({t})"), f)
        }
        FactorTarget::PowerPlusOne(a, n) => (format!("{a}^{n}+1"), factor_power_pm1(a, n, true)?),
    };
    let mut report = LemmaReport::new(format!("ledger:{id}"), format!("{label}={}", expected.to_record()));
    if actual != expected {
        report.fail(actual.to_record());
    }
    Ok(report)
}

/// Printed steps that do not match the arithmetic, keyed by the ledger line
/// they bear on. The claim the argument actually needs is what gets checked.
fn discrepancy_notes() -> Result<Vec<(&'static str, String)>> {
    let sbu = |t: &str| -> Result<Factorization> {
        let n: Factorization = t.parse()?;
        crate::factorint::factor_big(&divisor_sum(&n, DivisorClass::Biunitary))
    };
    let mut notes = vec![
        ("sigma-3^13", super::lemmas::sigma_3_14_discrepancy()?),
        (
            "e8-f6",
            format!(
                "σ**(3^6) = {} and σ**(2^8) = {}, so neither forces 7 | N; the 7^2 and 7^{{e3}} alternatives are checked as stated",
                sbu("3^6")?,
                sbu("2^8")?
            ),
        ),
    ];
    for f in 15..=17 {
        let big: Vec<String> = sbu(&format!("3^{f}"))?
            .primes()
            .filter(|&q| q >= 31)
            .map(|q| q.to_string())
            .collect();
        notes.push((
            "f15-17",
            format!(
                "σ**(3^{f}) has {} odd prime factors >= 31 ({}), not three; the quotient is checked as displayed",
                big.len(),
                big.join(", ")
            ),
        ));
    }
    notes.push(("e4-f5", "the template prints 5^{e3} for the new prime 7; checked with 7^y".to_string()));
    notes.push(("e10", "no fraction displayed; only the comparator is checked".to_string()));
    notes.push(("f8", "no fraction displayed; only the comparator is checked".to_string()));
    Ok(notes)
}

/// One report per ledger line.
pub fn ledger_reports() -> Result<Vec<LemmaReport>> {
    let mut out: Vec<LemmaReport> = ledger_entries().iter().map(LedgerEntry::check).collect();
    for &(id, q, k, t) in DIVISIBILITY_TABLE {
        out.push(check_divisibility(id, q, k, t)?);
    }
    for &(id, target, expected) in FACTORIZATION_TABLE {
        out.push(check_factorization(id, target, expected)?);
    }
    for (id, note) in discrepancy_notes()? {
        let target = format!("ledger:{id}");
        let r = out
            .iter_mut()
            .find(|r| r.lemma_id == target)
            .expect("discrepancy note refers to a ledger line");
        r.note(note);
    }
    Ok(out)
}

/// The whole ledger folded into one report.
pub fn verify_ledger() -> Result<LemmaReport> {
    let parts = ledger_reports()?;
    let mut r = LemmaReport::combine("ledger", &format!("{}entries", parts.len()), &parts);
    r.notes.retain(|n| !n.contains(": value "));
    Ok(r)
}
