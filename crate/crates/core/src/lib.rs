//! Divisor-sum arithmetic over the full, unitary and biunitary divisor
//! classes, with an exhaustive multiperfect search and an exact replay of the
//! case analysis behind the biunitary triperfect numbers divisible by 27.

pub mod divfun;
pub mod error;
pub mod factorint;
pub mod proof_replay;
pub mod ratio;
pub mod report;
pub mod sieve_search;
pub mod zsigmondy;

pub use divfun::DivisorClass;
pub use error::{Error, Result};
pub use factorint::Factorization;
