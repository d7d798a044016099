use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;

use super::{dense, dense_to_string, FieldDescriptor, FieldElement, FieldKind};
use crate::error::{Error, Result};
use crate::poly::qpoly;

/// Above this many candidate factors the distinct-degree test replaces enumeration.
const FACTOR_SEARCH_LIMIT: u128 = 200_000;

pub(super) fn check_irreducible(base: &FieldDescriptor, f: &[FieldElement], var: &str) -> Result<()> {
    let d = f.len() - 1;
    if d == 1 {
        return Ok(());
    }
    match base.kind() {
        _ if base.is_finite() => check_finite(base, f, var),
        FieldKind::Rationals => check_rational(f, var),
        _ => Err(Error::UnsupportedIrreducibilityCheck(format!("no irreducibility test over {base}"))),
    }
}

/// Irreducibility of a monic polynomial, reducible cases reported as `false`.
pub fn is_irreducible(base: &FieldDescriptor, f: &[FieldElement]) -> Result<bool> {
    match check_irreducible(base, f, "u") {
        Ok(()) => Ok(true),
        Err(Error::Reducible(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn monic_of_degree(base: &FieldDescriptor, k: usize, mut index: u128) -> Vec<FieldElement> {
    let q = base.cardinality().expect("finite base");
    let mut coeffs = vec![base.zero(); k + 1];
    coeffs[k] = base.one();
    for slot in coeffs[..k].iter_mut() {
        *slot = base.element_at(index % q).expect("index below q");
        index /= q;
    }
    coeffs
}

fn check_finite(base: &FieldDescriptor, f: &[FieldElement], var: &str) -> Result<()> {
    let q = base.cardinality().ok_or(Error::InfiniteField)?;
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        let count = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(q));
        match count {
            Some(n) if n <= FACTOR_SEARCH_LIMIT => {
                for idx in 0..n {
                    let cand = monic_of_degree(base, k, idx);
                    if dense::rem(base, f, &cand).is_empty() {
                        return Err(Error::Reducible(dense_to_string(&cand, var)));
                    }
                }
            }
            _ => {
                // gcd(f, x^(q^k) - x) collects every factor of degree dividing k
                let exp = (0..k).try_fold(1u128, |acc, _| acc.checked_mul(q)).ok_or_else(|| {
                    Error::UnsupportedIrreducibilityCheck("field too large for the distinct-degree test".into())
                })?;
                let x = vec![base.zero(), base.one()];
                let h = dense::sub(&dense::pow_mod(base, &x, exp, f), &x);
                let g = dense::gcd(base, &h, f);
                if g.len() > 1 {
                    return Err(Error::Reducible(dense_to_string(&g, var)));
                }
            }
        }
    }
    Ok(())
}

fn check_rational(f: &[FieldElement], var: &str) -> Result<()> {
    let coeffs: Vec<BigRational> = f.iter().map(|c| c.as_rational().expect("rational coefficients").clone()).collect();
    let d = coeffs.len() - 1;
    let roots = qpoly::rational_roots(&coeffs)
        .map_err(|_| Error::UnsupportedIrreducibilityCheck("constant term too large for the rational root test".into()))?;
    if let Some(r) = roots.first() {
        return Err(Error::Reducible(format!("{var} - ({r})")));
    }
    match d {
        2 | 3 => Ok(()),
        4 => match qpoly::quadratic_factor(&coeffs) {
            Ok(Some(factor)) => {
                let q = FieldDescriptor::rationals();
                let dense: Vec<FieldElement> = factor.iter().map(|c| q.from_rational(c).expect("ℚ")).collect();
                Err(Error::Reducible(dense_to_string(&dense, var)))
            }
            Ok(None) => Ok(()),
            Err(_) => Err(Error::UnsupportedIrreducibilityCheck(
                "constant term too large for the quadratic factor search".into(),
            )),
        },
        _ => Err(Error::UnsupportedIrreducibilityCheck(format!(
            "degree {d} over Q without rational roots"
        ))),
    }
}

/// First monic irreducible of degree `d` over a finite field, in enumeration order.
pub fn first_irreducible(base: &FieldDescriptor, d: usize) -> Result<Vec<FieldElement>> {
    let q = base.cardinality().ok_or(Error::InfiniteField)?;
    if d == 1 {
        return Ok(vec![base.zero(), base.one()]);
    }
    let total = (0..d).try_fold(1u128, |acc, _| acc.checked_mul(q)).ok_or(Error::InfiniteField)?;
    for idx in 0..total {
        let cand = monic_of_degree(base, d, idx);
        if cand[0].is_zero() {
            continue;
        }
        if check_finite(base, &cand, "u").is_ok() {
            return Ok(cand);
        }
    }
    Err(Error::NotIrreducible)
}
