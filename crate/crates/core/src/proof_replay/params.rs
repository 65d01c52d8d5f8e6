use std::fmt;

use crate::divfun::{join_exponent, split_exponent};
use crate::error::{Error, Result};

/// Exponents of 2 and 3 in a candidate, each split as `2s - 1 - δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseParams {
    pub e: u32,
    pub f: u32,
    pub s: u32,
    pub t: u32,
    pub delta: u32,
    pub eta: u32,
}

impl CaseParams {
    /// From the 2- and 3-exponents, both at least 1.
    pub fn new(e: u32, f: u32) -> Result<Self> {
        if e == 0 || f == 0 {
            return Err(Error::InvalidArgument(format!("exponents must be positive (e={e}, f={f})")));
        }
        let (s, delta) = split_exponent(e);
        let (t, eta) = split_exponent(f);
        Ok(CaseParams { e, f, s, t, delta, eta })
    }

    pub fn from_halves(s: u32, delta: u32, t: u32, eta: u32) -> Result<Self> {
        if delta > 1 || eta > 1 || s == 0 || t == 0 || (s == 1 && delta == 1) || (t == 1 && eta == 1) {
            return Err(Error::InvalidArgument(format!(
                "need s, t >= 1, δ, η in {{0, 1}} and positive exponents (s={s}, δ={delta}, t={t}, η={eta})"
            )));
        }
        Ok(CaseParams {
            e: join_exponent(s, delta),
            f: join_exponent(t, eta),
            s,
            t,
            delta,
            eta,
        })
    }
}

impl fmt::Display for CaseParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "e={}(s={},δ={}) f={}(t={},η={})",
            self.e, self.s, self.delta, self.f, self.t, self.eta
        )
    }
}
