//! Append-only checkpoint log.
//!
//! Each completed batch appends its hit records followed by a
//! `last_completed_hi=<n>` marker. On load, everything up to the final marker
//! is trusted; records after it belong to an unfinished batch and are dropped.
//! A malformed line before the final marker is reported as corruption.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::record::PerfectHit;
use crate::error::{Error, Result};

const MARKER: &str = "last_completed_hi=";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    /// Every `n < last_completed_hi` has been sieved.
    pub last_completed_hi: u64,
    pub hits: Vec<PerfectHit>,
}

fn corrupt(path: &Path, reason: String) -> Error {
    Error::Checkpoint {
        path: PathBuf::from(path),
        reason,
    }
}

/// `Ok(None)` when the file does not exist or holds no marker yet.
pub fn load(path: &Path) -> Result<Option<Checkpoint>> {
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let mut committed: Option<Checkpoint> = None;
    let mut pending: Vec<PerfectHit> = Vec::new();
    let mut pending_error: Option<String> = None;
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(v) = line.strip_prefix(MARKER) {
            if let Some(why) = pending_error.take() {
                return Err(corrupt(path, why));
            }
            let hi: u64 = v
                .parse()
                .map_err(|_| corrupt(path, format!("line {}: bad marker `{line}`", lineno + 1)))?;
            let mut cp = committed.take().unwrap_or(Checkpoint {
                last_completed_hi: 0,
                hits: Vec::new(),
            });
            if hi < cp.last_completed_hi {
                return Err(corrupt(path, format!("line {}: marker moves backwards", lineno + 1)));
            }
            if let Some(h) = pending.iter().find(|h| h.n >= hi) {
                return Err(corrupt(path, format!("hit n={} recorded beyond marker {hi}", h.n)));
            }
            cp.hits.append(&mut pending);
            cp.last_completed_hi = hi;
            committed = Some(cp);
        } else {
            match line.parse::<PerfectHit>() {
                Ok(hit) => pending.push(hit),
                Err(e) => {
                    // Tolerated only if no marker follows (torn final write).
                    pending_error.get_or_insert(format!("line {}: {e}", lineno + 1));
                }
            }
        }
    }
    if let Some(cp) = &committed {
        if cp.hits.windows(2).any(|w| w[0].n >= w[1].n) {
            return Err(corrupt(path, "hit records out of order".into()));
        }
    }
    Ok(committed)
}

/// Appends a batch's hits and its completion marker, then syncs.
pub fn append(path: &Path, hits: &[PerfectHit], last_completed_hi: u64) -> Result<()> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut buf = String::new();
    for h in hits {
        buf.push_str(&h.to_string());
        buf.push('\n');
    }
    buf.push_str(&format!("{MARKER}{last_completed_hi}\n"));
    file.write_all(buf.as_bytes())?;
    file.sync_data()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divfun::{divisor_sum, DivisorClass};
    use crate::factorint::factor;

    fn hit(n: u64) -> PerfectHit {
        let f = factor(n as u128);
        PerfectHit {
            n,
            k: 2,
            class: DivisorClass::Biunitary,
            sigma_value: divisor_sum(&f, DivisorClass::Biunitary),
            factorization: f,
        }
    }

    #[test]
    fn missing_file_is_fresh_start() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(load(&dir.path().join("none.ckpt")).unwrap(), None);
    }

    #[test]
    fn append_then_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        append(&path, &[hit(6)], 50).unwrap();
        append(&path, &[], 80).unwrap();
        append(&path, &[hit(90)], 100).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with("k=2 class=BIUNITARY n=6 sigma=12 fact=2*3\nlast_completed_hi=50\n"));
        let cp = load(&path).unwrap().unwrap();
        assert_eq!(cp.last_completed_hi, 100);
        assert_eq!(cp.hits.iter().map(|h| h.n).collect::<Vec<_>>(), vec![6, 90]);
    }

    #[test]
    fn torn_tail_is_dropped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        append(&path, &[hit(6)], 50).unwrap();
        let mut f = OpenOptions::new().append(true).open(&path).unwrap();
        f.write_all(b"k=2 class=BIUNITARY n=60 sigma=120 fact=2^2*3*5\nk=2 class=BIUN").unwrap();
        let cp = load(&path).unwrap().unwrap();
        assert_eq!(cp.last_completed_hi, 50);
        assert_eq!(cp.hits.len(), 1);
    }

    #[test]
    fn corruption_before_marker_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.ckpt");
        std::fs::write(&path, "garbage\nlast_completed_hi=10\n").unwrap();
        assert!(matches!(load(&path), Err(Error::Checkpoint { .. })));
        std::fs::write(&path, "last_completed_hi=10\nlast_completed_hi=5\n").unwrap();
        assert!(matches!(load(&path), Err(Error::Checkpoint { .. })));
        std::fs::write(&path, "k=2 class=BIUNITARY n=60 sigma=120 fact=2^2*3*5\nlast_completed_hi=10\n").unwrap();
        assert!(matches!(load(&path), Err(Error::Checkpoint { .. })));
    }
}
