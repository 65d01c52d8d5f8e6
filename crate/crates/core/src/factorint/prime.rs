//! Deterministic primality for `u128`.
//!
//! Below [`MR13_BOUND`] a strong-probable-prime test to the first thirteen
//! prime bases is a proof (Sorenson & Webster, 2015). Above it no finite base
//! set is known to suffice, so the same thirteen bases are combined with a
//! strong Lucas test (Baillie–PSW); no composite passing both is known.

use super::modring::{ModRing, Montgomery, Plain};

/// Smallest strong pseudoprime to all of the first thirteen prime bases.
pub const MR13_BOUND: u128 = 3_317_044_064_679_887_385_961_981;

const BASES: [u128; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

pub fn is_prime(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    if n < 43 * 43 {
        return true;
    }
    if n <= u64::MAX as u128 {
        let ring = Plain::new(n);
        BASES.iter().all(|&a| strong_probable_prime(&ring, a))
    } else {
        let ring = Montgomery::new(n);
        if !BASES.iter().all(|&a| strong_probable_prime(&ring, a)) {
            return false;
        }
        n < MR13_BOUND || strong_lucas(&ring)
    }
}

/// True when `is_prime(n)` is backed by a proven witness set.
pub fn primality_is_proven(n: u128) -> bool {
    n < MR13_BOUND
}

fn strong_probable_prime<R: ModRing>(ring: &R, base: u128) -> bool {
    let n = ring.modulus();
    let n1 = n - 1;
    let r = n1.trailing_zeros();
    let d = n1 >> r;
    let one = ring.one();
    let minus_one = ring.neg(one);
    let mut x = ring.pow(ring.enter(base), d);
    if x == one || x == minus_one {
        return true;
    }
    for _ in 1..r {
        x = ring.mul(x, x);
        if x == minus_one {
            return true;
        }
        if x == one {
            return false;
        }
    }
    false
}

/// Jacobi symbol (a/n) for odd positive n.
pub fn jacobi(mut a: u128, mut n: u128) -> i32 {
    debug_assert!(n & 1 == 1);
    a %= n;
    let mut result = 1;
    while a != 0 {
        while a & 1 == 0 {
            a >>= 1;
            let r = n & 7;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a & 3 == 3 && n & 3 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

pub(crate) fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    // Float estimate may be off by a few units at this width.
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

/// Strong Lucas probable-prime test with Selfridge parameters (P = 1).
fn strong_lucas<R: ModRing>(ring: &R) -> bool {
    let n = ring.modulus();
    let root = isqrt(n);
    if root * root == n {
        return false;
    }
    // D = 5, -7, 9, -11, ... with (D/n) = -1.
    let mut d_abs: u128 = 5;
    let mut negative = false;
    loop {
        let residue = if negative { n - d_abs % n } else { d_abs % n };
        match jacobi(residue, n) {
            -1 => break,
            0 if d_abs % n != 0 => return false,
            _ => {}
        }
        d_abs += 2;
        negative = !negative;
    }
    let d_res = if negative { ring.neg(ring.enter(d_abs)) } else { ring.enter(d_abs) };
    // Q = (1 - D) / 4
    let q_res = if negative {
        ring.enter((1 + d_abs) / 4)
    } else {
        ring.neg(ring.enter((d_abs - 1) / 4))
    };

    // n + 1 = d * 2^s; n is odd and < 2^128 - 1 here, so n + 1 does not overflow.
    let n1 = n + 1;
    let s = n1.trailing_zeros();
    let d = n1 >> s;

    let one = ring.one();
    let mut u = one;
    let mut v = one; // V_1 = P = 1
    let mut qk = q_res;
    let bits = 128 - d.leading_zeros();
    for i in (0..bits - 1).rev() {
        u = ring.mul(u, v);
        v = ring.sub(ring.mul(v, v), ring.add(qk, qk));
        qk = ring.mul(qk, qk);
        if (d >> i) & 1 == 1 {
            let u_next = ring.half(ring.add(u, v));
            let v_next = ring.half(ring.add(ring.mul(d_res, u), v));
            u = u_next;
            v = v_next;
            qk = ring.mul(qk, q_res);
        }
    }
    if u == 0 || v == 0 {
        return true;
    }
    for _ in 1..s {
        v = ring.sub(ring.mul(v, v), ring.add(qk, qk));
        qk = ring.mul(qk, qk);
        if v == 0 {
            return true;
        }
    }
    false
}
