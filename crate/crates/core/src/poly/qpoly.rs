//! Dense univariate polynomials over ℚ (low degree first): rational roots,
//! quadratic factors, Sturm chains and real root isolation.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};

pub type QPoly = Vec<BigRational>;

/// Largest constant term whose divisors we are willing to enumerate.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;
/// Cap on bisection rounds during isolation and refinement.
pub const MAX_BISECTIONS: usize = 4096;

pub fn trim(mut f: QPoly) -> QPoly {
    while f.last().is_some_and(Zero::is_zero) {
        f.pop();
    }
    f
}

pub fn eval(f: &[BigRational], x: &BigRational) -> BigRational {
    f.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

pub fn sign(x: &BigRational) -> i8 {
    match x.cmp(&BigRational::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn derivative(f: &[BigRational]) -> QPoly {
    trim(f.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect())
}

pub fn divrem(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let b = trim(b.to_vec());
    let db = b.len().checked_sub(1).expect("division by zero polynomial");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &b[db];
        for (k, bk) in b.iter().enumerate() {
            r[shift + k] = &r[shift + k] - &c * bk;
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

pub fn monic(f: &[BigRational]) -> QPoly {
    match f.last() {
        None => Vec::new(),
        Some(lc) => f.iter().map(|c| c / lc).collect(),
    }
}

pub fn gcd(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let r = divrem(&x, &y).1;
        x = y;
        y = r;
    }
    monic(&x)
}

pub fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// `f / gcd(f, f')`, monic.
pub fn squarefree_part(f: &[BigRational]) -> QPoly {
    let f = trim(f.to_vec());
    if f.len() <= 1 {
        return monic(&f);
    }
    let g = gcd(&f, &derivative(&f));
    monic(&divrem(&f, &g).0)
}

/// Scale a polynomial to primitive integer coefficients, positive content.
fn integer_primitive(f: &[BigRational]) -> Vec<BigInt> {
    let den_lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = f.iter().map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if content.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &content).collect()
}

/// Distinct rational roots in increasing order.
///
/// Errors with `BoundExceeded` when the coefficients are too large for the
/// divisor enumeration.
pub fn rational_roots(f: &[BigRational]) -> Result<Vec<BigRational>> {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots = Vec::new();
    let mut g = integer_primitive(&f);
    // strip x^k
    if g[0].is_zero() {
        roots.push(BigRational::zero());
        let shift = g.iter().take_while(|c| c.is_zero()).count();
        g.drain(..shift);
    }
    if g.len() > 1 {
        let lead = g.last().unwrap().clone();
        let num_divs = arith::divisors(&g[0], DIVISOR_LIMIT)
            .ok_or_else(|| Error::BoundExceeded("constant term too large for the rational root test".into()))?;
        let den_divs = arith::divisors(&lead, DIVISOR_LIMIT)
            .ok_or_else(|| Error::BoundExceeded("leading coefficient too large for the rational root test".into()))?;
        let gq: QPoly = g.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        for p in &num_divs {
            for q in &den_divs {
                for cand in [BigRational::new(p.clone(), q.clone()), BigRational::new(-p.clone(), q.clone())] {
                    if !roots.contains(&cand) && eval(&gq, &cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// For a quartic over ℚ, a monic rational quadratic factor if one exists.
/// The quartic is expected to have no rational roots.
pub fn quadratic_factor(f: &[BigRational]) -> Result<Option<QPoly>> {
    let f = monic(&trim(f.to_vec()));
    if f.len() != 5 {
        return Ok(None);
    }
    // x -> x/D makes the polynomial monic with integer coefficients
    let den = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let scaled: Vec<BigInt> = (0..5)
        .map(|i| {
            let factor = num_traits::pow(BigRational::from_integer(den.clone()), 4 - i);
            (&f[i] * factor).to_integer()
        })
        .collect();
    let (d, c, b, a) = (&scaled[0], &scaled[1], &scaled[2], &scaled[3]);
    if d.is_zero() {
        return Ok(None);
    }
    let divs = arith::divisors(d, DIVISOR_LIMIT)
        .ok_or_else(|| Error::BoundExceeded("constant term too large for the quadratic factor search".into()))?;
    // (x^2 + p x + q)(x^2 + r x + s) with q s = d
    for q0 in &divs {
        for q in [q0.clone(), -q0.clone()] {
            let s = d / &q;
            let found = if q != s {
                // p (s - q) = c - q a
                let num = c - &q * a;
                let den_ps = &s - &q;
                if (&num % &den_ps).is_zero() {
                    let p = num / den_ps;
                    let r = a - &p;
                    (&p * &r + &q + &s == *b).then_some((p, q.clone()))
                } else {
                    None
                }
            } else if &q * a == *c {
                // p + r = a, p r = b - 2q
                let disc = a * a - BigInt::from(4) * (b - BigInt::from(2) * &q);
                arith::exact_sqrt(&disc).and_then(|sq| {
                    let two = BigInt::from(2);
                    let p_num = a + &sq;
                    (&p_num % &two).is_zero().then(|| (p_num / &two, q.clone()))
                })
            } else {
                None
            };
            if let Some((p, q)) = found {
                let d_q = BigRational::from_integer(den.clone());
                let factor = vec![
                    BigRational::from_integer(q) / (&d_q * &d_q),
                    BigRational::from_integer(p) / &d_q,
                    BigRational::one(),
                ];
                return Ok(Some(factor));
            }
        }
    }
    Ok(None)
}

/// Sturm chain of the squarefree part of `f`.
pub fn sturm_chain(f: &[BigRational]) -> Vec<QPoly> {
    let p0 = squarefree_part(f);
    if p0.len() <= 1 {
        return vec![p0];
    }
    let p1 = derivative(&p0);
    let mut chain = vec![p0, p1];
    loop {
        let n = chain.len();
        let r = divrem(&chain[n - 2], &chain[n - 1]).1;
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    chain
}

pub fn sign_variations(chain: &[QPoly], x: &BigRational) -> usize {
    let signs: Vec<i8> = chain.iter().map(|p| sign(&eval(p, x))).filter(|&s| s != 0).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Distinct real roots in the open interval `(lo, hi)`; the endpoints must not be roots.
pub fn count_roots(chain: &[QPoly], lo: &BigRational, hi: &BigRational) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// Every real root has absolute value below this bound.
pub fn cauchy_bound(f: &[BigRational]) -> BigRational {
    let f = trim(f.to_vec());
    let lc = f.last().expect("nonzero").abs();
    let max = f[..f.len() - 1].iter().map(|c| c.abs() / &lc).max().unwrap_or_else(BigRational::zero);
    BigRational::one() + max
}

/// Isolating open intervals `(lo, hi)`, increasing, one per distinct real root.
pub fn isolate(f: &[BigRational]) -> Result<Vec<(BigRational, BigRational)>> {
    let f = trim(f.to_vec());
    if f.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let chain = sturm_chain(&f);
    let sqf = &chain[0];
    if sqf.len() <= 1 {
        return Ok(Vec::new());
    }
    let b = cauchy_bound(sqf);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    let mut rounds = 0usize;
    while let Some((lo, hi)) = stack.pop() {
        let n = count_roots(&chain, &lo, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                rounds += 1;
                if rounds > MAX_BISECTIONS {
                    return Err(Error::RefinementExhausted);
                }
                let mid = split_point(sqf, &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// A point strictly inside `(lo, hi)` that is not a root of `f`.
pub fn split_point(f: &[BigRational], lo: &BigRational, hi: &BigRational) -> BigRational {
    let width = hi - lo;
    let mut k: i64 = 1;
    loop {
        // 1/2, then 1/3, 2/3, 1/4, ... until a non-root shows up
        for j in 1..=k {
            let t = BigRational::new(j.into(), (k + 1).into());
            let m = lo + &width * &t;
            if !eval(f, &m).is_zero() {
                return m;
            }
        }
        k += 1;
    }
}

/// Shrink an isolating interval of the squarefree `f` below `max_width`.
pub fn refine(
    f: &[BigRational],
    lo: &BigRational,
    hi: &BigRational,
    max_width: &BigRational,
) -> Result<(BigRational, BigRational)> {
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let s_lo = sign(&eval(f, &lo));
    for _ in 0..MAX_BISECTIONS {
        if &(&hi - &lo) <= max_width {
            return Ok((lo, hi));
        }
        let mid = split_point(f, &lo, &hi);
        if sign(&eval(f, &mid)) == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::RefinementExhausted)
}
