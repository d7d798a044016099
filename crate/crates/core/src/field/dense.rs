//! Dense univariate polynomials over a field, stored low degree first.
//!
//! These helpers back extension and function-field arithmetic and the
//! univariate operations on [`crate::poly::MultiPoly`]. Every vector handed
//! out is trimmed (no trailing zeros; the zero polynomial is empty).

use alloc::vec;
use alloc::vec::Vec;

use super::{FieldDescriptor, FieldElement};

pub type Dense = Vec<FieldElement>;

pub fn trim(v: &mut Dense) {
    while v.last().is_some_and(FieldElement::is_zero) {
        v.pop();
    }
}

pub fn trimmed(mut v: Dense) -> Dense {
    trim(&mut v);
    v
}

pub fn degree(v: &[FieldElement]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn add(a: &[FieldElement], b: &[FieldElement]) -> Dense {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out: Dense = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = &*o + s;
    }
    trimmed(out)
}

pub fn neg(a: &[FieldElement]) -> Dense {
    a.iter().map(|c| -c).collect()
}

pub fn sub(a: &[FieldElement], b: &[FieldElement]) -> Dense {
    add(a, &neg(b))
}

pub fn mul(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Dense {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![field.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    trimmed(out)
}

pub fn scale(a: &[FieldElement], c: &FieldElement) -> Dense {
    if c.is_zero() {
        return Vec::new();
    }
    trimmed(a.iter().map(|x| x * c).collect())
}

/// Euclidean division; `b` must be nonzero.
pub fn divrem(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> (Dense, Dense) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead_inv = b[db].inv().expect("trimmed divisor has nonzero lead");
    let mut rem: Dense = trimmed(a.to_vec());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![field.zero(); rem.len() - db];
    while rem.len() > db {
        let shift = rem.len() - 1 - db;
        let c = &rem[rem.len() - 1] * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] = &rem[shift + k] - &(&c * bk);
        }
        quot[shift] = c;
        // leading term cancels exactly
        rem.pop();
        trim(&mut rem);
    }
    (trimmed(quot), rem)
}

pub fn rem(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Dense {
    divrem(field, a, b).1
}

pub fn monic(a: &[FieldElement]) -> Dense {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero lead");
            a.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub fn gcd(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> Dense {
    let mut x = trimmed(a.to_vec());
    let mut y = trimmed(b.to_vec());
    while !y.is_empty() {
        let r = rem(field, &x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)` and `g = gcd(a, b)` monic.
pub fn gcd_cofactor(field: &FieldDescriptor, a: &[FieldElement], b: &[FieldElement]) -> (Dense, Dense) {
    let (mut r0, mut r1) = (trimmed(a.to_vec()), trimmed(b.to_vec()));
    let (mut s0, mut s1) = (vec![field.one()], Vec::new());
    while !r1.is_empty() {
        let (q, r) = divrem(field, &r0, &r1);
        let s = sub(&s0, &mul(field, &q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    match r0.last() {
        None => (Vec::new(), Vec::new()),
        Some(lead) => {
            let inv = lead.inv().expect("nonzero lead");
            (scale(&r0, &inv), scale(&s0, &inv))
        }
    }
}

pub fn eval(a: &[FieldElement], x: &FieldElement) -> FieldElement {
    let mut acc = x.field().zero();
    for c in a.iter().rev() {
        acc = &(&acc * x) + c;
    }
    acc
}

pub fn derivative(a: &[FieldElement]) -> Dense {
    trimmed(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &c.field().from_u64(i as u64))
            .collect(),
    )
}

pub fn pow_mod(field: &FieldDescriptor, base: &[FieldElement], mut exp: u128, modulus: &[FieldElement]) -> Dense {
    let mut acc = vec![field.one()];
    let mut b = rem(field, base, modulus);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(field, &mul(field, &acc, &b), modulus);
        }
        b = rem(field, &mul(field, &b, &b), modulus);
        exp >>= 1;
    }
    trimmed(acc)
}
