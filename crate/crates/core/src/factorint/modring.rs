//! Modular arithmetic over `u128` moduli.
//!
//! Moduli below 2^64 use plain `u128` products. Larger odd moduli go through
//! Montgomery multiplication with R = 2^128, which needs a 256-bit
//! intermediate product assembled from four 64x64 multiplications.

/// Arithmetic in Z/nZ on values kept in some internal representation.
pub(crate) trait ModRing {
    fn modulus(&self) -> u128;
    /// Maps a residue into the internal representation.
    fn enter(&self, a: u128) -> u128;
    /// Maps an internal value back to the canonical residue.
    fn leave(&self, a: u128) -> u128;
    fn mul(&self, a: u128, b: u128) -> u128;
    fn one(&self) -> u128;

    fn add(&self, a: u128, b: u128) -> u128 {
        let n = self.modulus();
        let (s, carry) = a.overflowing_add(b);
        if carry || s >= n {
            s.wrapping_sub(n)
        } else {
            s
        }
    }

    fn sub(&self, a: u128, b: u128) -> u128 {
        if a >= b {
            a - b
        } else {
            a.wrapping_sub(b).wrapping_add(self.modulus())
        }
    }

    fn neg(&self, a: u128) -> u128 {
        if a == 0 {
            0
        } else {
            self.modulus() - a
        }
    }

    /// Halves a value; valid for odd moduli since the representation is linear.
    fn half(&self, a: u128) -> u128 {
        if a & 1 == 0 {
            a >> 1
        } else {
            // (a + n) / 2 without overflowing when n is close to 2^128.
            (a >> 1) + (self.modulus() >> 1) + 1
        }
    }

    fn pow(&self, base: u128, mut exp: u128) -> u128 {
        let mut acc = self.one();
        let mut b = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

/// Moduli below 2^64: residues are stored as-is.
pub(crate) struct Plain {
    n: u128,
}

impl Plain {
    pub(crate) fn new(n: u128) -> Self {
        debug_assert!(n >= 2 && n <= u64::MAX as u128);
        Plain { n }
    }
}

impl ModRing for Plain {
    fn modulus(&self) -> u128 {
        self.n
    }
    fn enter(&self, a: u128) -> u128 {
        a % self.n
    }
    fn leave(&self, a: u128) -> u128 {
        a
    }
    fn mul(&self, a: u128, b: u128) -> u128 {
        (a * b) % self.n
    }
    fn one(&self) -> u128 {
        1 % self.n
    }
}

/// Montgomery form for odd moduli of any width up to 128 bits.
pub(crate) struct Montgomery {
    n: u128,
    /// -n^{-1} mod 2^128
    n_neg_inv: u128,
    /// R^2 mod n
    r2: u128,
    /// R mod n
    r1: u128,
}

#[inline]
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const MASK: u128 = u64::MAX as u128;
    let (a0, a1) = (a & MASK, a >> 64);
    let (b0, b1) = (b & MASK, b >> 64);
    let p00 = a0 * b0;
    let p01 = a0 * b1;
    let p10 = a1 * b0;
    let p11 = a1 * b1;
    let mid = (p00 >> 64) + (p01 & MASK) + (p10 & MASK);
    let lo = (p00 & MASK) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (lo, hi)
}

impl Montgomery {
    pub(crate) fn new(n: u128) -> Self {
        assert!(n & 1 == 1 && n > 1, "Montgomery modulus must be odd and > 1");
        // Newton iteration doubles the number of correct low bits each round.
        let mut inv: u128 = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        debug_assert_eq!(n.wrapping_mul(inv), 1);
        let r1 = (u128::MAX % n + 1) % n;
        let mut m = Montgomery {
            n,
            n_neg_inv: inv.wrapping_neg(),
            r2: 0,
            r1,
        };
        // R^2 mod n by doubling R mod n another 128 times.
        let mut r2 = r1;
        for _ in 0..128 {
            r2 = m.add(r2, r2);
        }
        m.r2 = r2;
        m
    }

    #[inline]
    fn redc(&self, lo: u128, hi: u128) -> u128 {
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mlo, mhi) = mul_wide(m, self.n);
        let carry = u128::from(lo.overflowing_add(mlo).1);
        let (t, over1) = hi.overflowing_add(mhi);
        let (t, over2) = t.overflowing_add(carry);
        if over1 || over2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }
}

impl ModRing for Montgomery {
    fn modulus(&self) -> u128 {
        self.n
    }
    fn enter(&self, a: u128) -> u128 {
        let (lo, hi) = mul_wide(a % self.n, self.r2);
        self.redc(lo, hi)
    }
    fn leave(&self, a: u128) -> u128 {
        self.redc(a, 0)
    }
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (lo, hi) = mul_wide(a, b);
        self.redc(lo, hi)
    }
    fn one(&self) -> u128 {
        self.r1
    }
}

/// `base^exp mod m` for any modulus `m >= 1`.
pub fn pow_mod(base: u128, exp: u128, m: u128) -> u128 {
    assert!(m >= 1, "modulus must be positive");
    if m == 1 {
        return 0;
    }
    if m <= u64::MAX as u128 {
        let r = Plain::new(m);
        r.leave(r.pow(r.enter(base), exp))
    } else if m & 1 == 1 {
        let r = Montgomery::new(m);
        r.leave(r.pow(r.enter(base), exp))
    } else {
        pow_mod_slow(base, exp, m)
    }
}

/// `a * b mod m` by shift-and-add; only used for even moduli wider than 64 bits.
fn mul_mod_slow(mut a: u128, mut b: u128, m: u128) -> u128 {
    a %= m;
    b %= m;
    let mut acc: u128 = 0;
    let add = |x: u128, y: u128| {
        let (s, c) = x.overflowing_add(y);
        if c || s >= m {
            s.wrapping_sub(m)
        } else {
            s
        }
    };
    while b > 0 {
        if b & 1 == 1 {
            acc = add(acc, a);
        }
        a = add(a, a);
        b >>= 1;
    }
    acc
}

fn pow_mod_slow(base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_slow(acc, b, m);
        }
        b = mul_mod_slow(b, b, m);
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_product_matches_u128_for_small_inputs() {
        let (lo, hi) = mul_wide(u64::MAX as u128, u64::MAX as u128);
        assert_eq!(hi, 0);
        assert_eq!(lo, (u64::MAX as u128) * (u64::MAX as u128));
        let (lo, hi) = mul_wide(u128::MAX, u128::MAX);
        // (2^128 - 1)^2 = 2^256 - 2^129 + 1
        assert_eq!(lo, 1);
        assert_eq!(hi, u128::MAX - 1);
    }

    #[test]
    fn montgomery_agrees_with_slow_path() {
        let moduli = [
            (1u128 << 127) - 1,
            u128::MAX,
            (1u128 << 64) + 13,
            340282366920938463463374607431768211297,
        ];
        for &n in &moduli {
            let r = Montgomery::new(n);
            for &(a, b) in &[(3u128, 5u128), (n - 1, n - 1), (n / 3, n / 7), (1u128 << 100, 12345)] {
                let got = r.leave(r.mul(r.enter(a), r.enter(b)));
                assert_eq!(got, mul_mod_slow(a, b, n), "n={n} a={a} b={b}");
            }
            assert_eq!(r.leave(r.one()), 1);
            let x = r.enter(12345);
            assert_eq!(r.leave(r.half(r.add(x, x))), 12345);
        }
    }

    #[test]
    fn pow_mod_small_cases() {
        assert_eq!(pow_mod(2, 10, 1000), 24);
        assert_eq!(pow_mod(3, 0, 7), 1);
        assert_eq!(pow_mod(5, 3, 1), 0);
        // Fermat: 2^(p-1) = 1 mod p for p = 2^127 - 1
        let p = (1u128 << 127) - 1;
        assert_eq!(pow_mod(2, p - 1, p), 1);
        assert_eq!(pow_mod(7, 5, 1u128 << 100), 16807);
    }
}
