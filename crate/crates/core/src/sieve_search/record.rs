//! Hit records and OEIS b-files.

use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigUint;

use crate::divfun::{divisor_sum, DivisorClass};
use crate::error::{Error, Result};
use crate::factorint::Factorization;

/// A solution of `σ_class(n) = k·n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectHit {
    pub n: u64,
    pub k: u64,
    pub class: DivisorClass,
    pub factorization: Factorization,
    pub sigma_value: BigUint,
}

impl PerfectHit {
    /// Checks `sigma_value = divisor_sum(factorization) = k·n` and that the
    /// factorization reconstructs `n`.
    pub fn is_consistent(&self) -> bool {
        self.factorization.to_u128() == Some(self.n as u128)
            && divisor_sum(&self.factorization, self.class) == self.sigma_value
            && self.sigma_value == BigUint::from(self.n) * self.k
    }
}

impl fmt::Display for PerfectHit {
    /// `k=<k> class=<CLASS> n=<n> sigma=<value> fact=<p1^e1*p2^e2*...>`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} class={} n={} sigma={} fact={}",
            self.k,
            self.class,
            self.n,
            self.sigma_value,
            self.factorization.to_record()
        )
    }
}

impl FromStr for PerfectHit {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("{why} in hit record `{line}`"));
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(bad("expected 5 fields"));
        }
        let value = |i: usize, key: &str| -> Result<&str> {
            fields[i]
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| bad(&format!("missing `{key}=`")))
        };
        let k = value(0, "k")?.parse().map_err(|_| bad("bad k"))?;
        let class = value(1, "class")?.parse()?;
        let n = value(2, "n")?.parse().map_err(|_| bad("bad n"))?;
        let sigma_value = value(3, "sigma")?.parse().map_err(|_| bad("bad sigma"))?;
        let factorization = value(4, "fact")?.parse()?;
        let hit = PerfectHit {
            n,
            k,
            class,
            factorization,
            sigma_value,
        };
        if !hit.is_consistent() {
            return Err(bad("inconsistent values"));
        }
        Ok(hit)
    }
}

/// Writes `<index> <n>` lines, index from 1.
pub fn write_bfile<W: Write>(hits: &[PerfectHit], mut out: W) -> std::io::Result<()> {
    for (i, hit) in hits.iter().enumerate() {
        writeln!(out, "{} {}", i + 1, hit.n)?;
    }
    out.flush()
}

pub fn export_bfile(hits: &[PerfectHit], path: &Path) -> Result<()> {
    if hits.windows(2).any(|w| w[0].n >= w[1].n) {
        return Err(Error::InvalidArgument("b-file hits must be strictly ascending".into()));
    }
    let file = std::fs::File::create(path)?;
    write_bfile(hits, std::io::BufWriter::new(file))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorint::factor;

    pub(crate) fn hit(n: u64, k: u64, class: DivisorClass) -> PerfectHit {
        let f = factor(n as u128);
        PerfectHit {
            n,
            k,
            class,
            sigma_value: divisor_sum(&f, class),
            factorization: f,
        }
    }

    #[test]
    fn record_format() {
        let h = hit(2160, 3, DivisorClass::Biunitary);
        let line = h.to_string();
        assert_eq!(line, "k=3 class=BIUNITARY n=2160 sigma=6480 fact=2^4*3^3*5");
        assert_eq!(line.parse::<PerfectHit>().unwrap(), h);
    }

    #[test]
    fn rejects_inconsistent_records() {
        assert!("k=3 class=BIUNITARY n=2161 sigma=6480 fact=2^4*3^3*5"
            .parse::<PerfectHit>()
            .is_err());
        assert!("k=2 class=BIUNITARY n=2160 sigma=6480 fact=2^4*3^3*5"
            .parse::<PerfectHit>()
            .is_err());
        assert!("k=3 n=2160".parse::<PerfectHit>().is_err());
    }

    #[test]
    fn bfile_lines() {
        let hits: Vec<_> = [6, 60, 90].iter().map(|&n| hit(n, 2, DivisorClass::Biunitary)).collect();
        let mut buf = Vec::new();
        write_bfile(&hits, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1 6\n2 60\n3 90\n");

        let mut buf = Vec::new();
        write_bfile(&[], &mut buf).unwrap();
        assert!(buf.is_empty());

        let hits: Vec<_> = [120, 672, 2160].iter().map(|&n| hit(n, 3, DivisorClass::Biunitary)).collect();
        let mut buf = Vec::new();
        write_bfile(&hits, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1 120\n2 672\n3 2160\n");
    }
}
