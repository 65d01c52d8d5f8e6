//! Pollard rho with Brent's cycle detection and batched gcds.

use num_integer::Integer;

use super::modring::{ModRing, Montgomery, Plain};

const BATCH: u64 = 128;

/// Finds a nontrivial divisor of an odd composite `n`, retrying with new
/// polynomial constants until one succeeds.
pub(crate) fn find_divisor(n: u128) -> u128 {
    debug_assert!(n & 1 == 1 && n > 3);
    for c in 1u128.. {
        let found = if n <= u64::MAX as u128 {
            brent(&Plain::new(n), c)
        } else {
            brent(&Montgomery::new(n), c)
        };
        if let Some(d) = found {
            return d;
        }
    }
    unreachable!()
}

fn brent<R: ModRing>(ring: &R, c: u128) -> Option<u128> {
    let n = ring.modulus();
    let c = ring.enter(c);
    let step = |x: u128| ring.add(ring.mul(x, x), c);

    let mut y = ring.enter(2);
    let mut x = y;
    let mut saved = y;
    let mut g: u128 = 1;
    let mut q = ring.one();
    let mut r: u64 = 1;

    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            saved = y;
            let lim = BATCH.min(r - k);
            for _ in 0..lim {
                y = step(y);
                q = ring.mul(q, ring.sub(x, y));
            }
            g = q.gcd(&n);
            k += lim;
        }
        r *= 2;
        if r > 1 << 40 {
            return None;
        }
    }
    if g == n {
        // Batch overshot; replay it one step at a time.
        loop {
            saved = step(saved);
            g = ring.sub(x, saved).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}
