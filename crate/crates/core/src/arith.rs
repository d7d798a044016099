//! Small-integer number theory shared by the field and p-adic code.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Deterministic primality by trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Reduce a big integer into `[0, m)`.
pub fn bigint_mod(a: &BigInt, m: u64) -> u64 {
    let r = a.mod_floor(&BigInt::from(m));
    u64::try_from(r).expect("residue below modulus")
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn lcm_range(n: usize) -> usize {
    (1..=n.max(1)).fold(1usize, |acc, k| acc.lcm(&k))
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation(a: &BigInt, p: u64) -> u32 {
    debug_assert!(!a.is_zero());
    let p = BigInt::from(p);
    let mut a = a.abs();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        a = q;
        v += 1;
    }
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// All positive divisors of `|n|`, or `None` when `|n|` exceeds `limit`.
pub fn divisors(n: &BigInt, limit: u64) -> Option<alloc::vec::Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        return None;
    }
    let small = u64::try_from(&n).ok().filter(|v| *v <= limit)?;
    let mut small_divs = alloc::vec::Vec::new();
    let mut large = alloc::vec::Vec::new();
    let mut d = 1u64;
    while d.saturating_mul(d) <= small {
        if small % d == 0 {
            small_divs.push(BigInt::from(d));
            if d != small / d {
                large.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    large.reverse();
    small_divs.extend(large);
    Some(small_divs)
}

pub fn biguint_pow(base: u64, exp: u32) -> BigUint {
    let mut acc = BigUint::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}
