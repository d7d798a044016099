//! Brute-force reference computations that share no code path with the
//! procedures they check.

use etale_core::poly::univariate_divmod;
use etale_core::splitdetect::SplittingInput;
use etale_core::{FieldDescriptor, FieldElement, MultiPoly, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

fn modpow(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn strip(mut n: BigInt, p: u64) -> (BigInt, i64) {
    let pb = BigInt::from(p);
    let mut v = 0;
    while !n.is_zero() && (&n % &pb).is_zero() {
        n /= &pb;
        v += 1;
    }
    (n, v)
}

/// `a ∈ (ℚ_p^×)^n`: `n | v_p(a)` and the unit part is an `n`-th power of a
/// unit modulo `p^{2e+3}` with `e = v_p(n)`, by scanning every residue.
pub fn qp_power_oracle(a: &BigRational, n: u32, p: u64) -> bool {
    let (num, vn) = strip(a.numer().clone(), p);
    let (den, vd) = strip(a.denom().clone(), p);
    if (vn - vd).rem_euclid(n as i64) != 0 {
        return false;
    }
    let mut e = 0;
    let mut nn = n as u64;
    while nn % p == 0 {
        nn /= p;
        e += 1;
    }
    let m = (p as u128).pow(2 * e + 3);
    let red = |x: &BigInt| -> u128 {
        let mb = BigInt::from(m);
        let r = ((x % &mb) + &mb) % &mb;
        r.to_u128().expect("reduced")
    };
    let (un, ud) = (red(&num), red(&den));
    // u = un / ud  ⇔  x^n · ud ≡ un
    (1..m).filter(|x| x % p as u128 != 0).any(|x| modpow(x, n as u128, m) * ud % m == un)
}

/// Splitting condition by scanning `L` for roots of `f(x, b)`, multiplicity
/// by repeated division.
pub fn splitting_oracle(input: &SplittingInput, b: &[FieldElement]) -> Result<bool> {
    let l = input.galois().ext();
    let k = input.field();
    let assignment: Vec<(&str, FieldElement)> =
        input.base_vars().iter().map(String::as_str).zip(b.iter().cloned()).collect();
    let x = input.fiber_var();
    let fb = input.f().partial_eval(&assignment)?.with_vars(&[x])?;
    let gb = input.g().partial_eval(&assignment)?.with_vars(&[x])?;
    let fl = fb.change_field(l)?;
    let mut total = 0;
    for r in l.enumerate()? {
        let lin = MultiPoly::from_dense(l, &[x], x, &[-&r, l.one()])?;
        let mut cur = fl.clone();
        let mut mult = 0;
        loop {
            let (q, rem) = univariate_divmod(&cur, &lin, x)?;
            if !rem.is_zero() {
                break;
            }
            cur = q;
            mult += 1;
        }
        total += mult;
        if mult == 1 {
            if let Some(a) = r.restrict_to(k) {
                if !gb.eval(&[a])?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(total == input.degree())
}

/// Indices (in enumeration order of `big`) of the roots of `f` over `𝔽_p`
/// (dense, low degree first) lying in `big`. With `big = 𝔽_{p^6}` this is
/// every root of a polynomial of degree ≤ 3, since each irreducible factor
/// has degree 1, 2 or 3.
pub fn root_set(f: &[u64], big: &FieldDescriptor, elems: &[FieldElement]) -> Vec<usize> {
    let ev = |x: &FieldElement| -> FieldElement {
        let mut acc = big.zero();
        for &k in f.iter().rev() {
            acc = &(&acc * x) + &big.from_u64(k);
        }
        acc
    };
    elems.iter().enumerate().filter(|(_, x)| ev(x).is_zero()).map(|(i, _)| i).collect()
}

/// Points of `V_α(𝔽_q)` for `yw = x² − βw²`, `z² = βy² + αw²` by raw
/// residue arithmetic over every normalized point of `ℙ³(𝔽_q)`, `q` prime.
pub fn fiber_count(q: u64, beta: u64, alpha: u64) -> usize {
    let mut count = 0;
    for lead in 0..4 {
        let free = 3 - lead;
        for idx in 0..q.pow(free as u32) {
            let mut pt = [0u64; 4];
            pt[lead] = 1;
            let mut r = idx;
            for k in lead + 1..4 {
                pt[k] = r % q;
                r /= q;
            }
            let [x, y, z, w] = pt;
            let e1 = (y * w + q * q - x * x % q + beta * w % q * w) % q;
            let e2 = (z * z + 2 * q * q - beta * y % q * y % q - alpha * w % q * w % q) % q;
            if e1 == 0 && e2 == 0 {
                count += 1;
            }
        }
    }
    count
}

/// A rational polynomial with a known number of distinct real roots,
/// assembled from linear factors and `x² ± c` with `c` squarefree.
#[derive(Debug, Clone)]
pub struct PlantedPoly {
    /// Low degree first.
    pub coeffs: Vec<BigRational>,
    pub rational_roots: Vec<BigRational>,
    /// `c` with `±√c` roots.
    pub sqrt_roots: Vec<u64>,
}

impl PlantedPoly {
    pub fn distinct_real_roots(&self) -> usize {
        self.rational_roots.len() + 2 * self.sqrt_roots.len()
    }

    /// Roots in the open interval `(lo, hi)`.
    pub fn roots_in(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let mut n = self.rational_roots.iter().filter(|r| lo < *r && *r < hi).count();
        for &c in &self.sqrt_roots {
            let c = BigRational::from_integer(c.into());
            // +√c in (lo, hi)
            let pos_above_lo = !lo.is_positive() || lo * lo < c;
            let pos_below_hi = hi.is_positive() && c < hi * hi;
            n += (pos_above_lo && pos_below_hi) as usize;
            // -√c in (lo, hi)
            let neg_below_hi = !hi.is_negative() || c > hi * hi;
            let neg_above_lo = lo.is_negative() && c < lo * lo;
            n += (neg_below_hi && neg_above_lo) as usize;
        }
        n
    }
}

pub fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `count` planted polynomials of degree 1..=6, seeded.
pub fn planted_catalog(count: usize, seed: u64) -> Vec<PlantedPoly> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    const SQUAREFREE: [u64; 8] = [2, 3, 5, 6, 7, 10, 11, 13];
    let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let target = rng.gen_range(1..=6);
        let mut coeffs = vec![r(rng.gen_range(1..=3), 1)];
        let mut deg = 0;
        let mut rational_roots: Vec<BigRational> = Vec::new();
        let mut sqrt_roots: Vec<u64> = Vec::new();
        while deg < target {
            let room = target - deg;
            let kind = if room >= 2 { rng.gen_range(0..4) } else { 0 };
            match kind {
                0 | 1 => {
                    let root = r(rng.gen_range(-7..=7), rng.gen_range(1..=3));
                    coeffs = qmul(&coeffs, &[-root.clone(), r(1, 1)]);
                    if !rational_roots.contains(&root) {
                        rational_roots.push(root);
                    }
                    deg += 1;
                }
                2 => {
                    let c = SQUAREFREE[rng.gen_range(0..SQUAREFREE.len())];
                    coeffs = qmul(&coeffs, &[r(-(c as i64), 1), r(0, 1), r(1, 1)]);
                    if !sqrt_roots.contains(&c) {
                        sqrt_roots.push(c);
                    }
                    deg += 2;
                }
                _ => {
                    let c = rng.gen_range(1..=9);
                    coeffs = qmul(&coeffs, &[r(c, 1), r(0, 1), r(1, 1)]);
                    deg += 2;
                }
            }
        }
        out.push(PlantedPoly { coeffs, rational_roots, sqrt_roots });
    }
    out
}
