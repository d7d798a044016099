use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::Zero;

use super::{convert_element, qpoly, MultiPoly};
use crate::error::{Error, Result};
use crate::field::{dense, FieldDescriptor, FieldElement, FieldKind};

fn univariate_pair(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<(Vec<String>, Vec<FieldElement>, Vec<FieldElement>)> {
    if f.field() != g.field() {
        return Err(Error::DescriptorMismatch(alloc::format!("{} vs {}", f.field(), g.field())));
    }
    let vars = f.merged_vars(g);
    Ok((vars, f.to_dense(var)?, g.to_dense(var)?))
}

fn out_vars(vars: &[alloc::string::String], var: &str) -> Vec<alloc::string::String> {
    let mut vars = vars.to_vec();
    if !vars.iter().any(|v| v == var) {
        vars.push(var.into());
    }
    vars
}

/// `f = q*g + r` with `deg r < deg g`.
pub fn univariate_divmod(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<(MultiPoly, MultiPoly)> {
    let (vars, fd, gd) = univariate_pair(f, g, var)?;
    if gd.is_empty() {
        return Err(Error::DivisionByZeroPoly);
    }
    let (q, r) = dense::divrem(f.field(), &fd, &gd);
    let vars = out_vars(&vars, var);
    Ok((
        MultiPoly::from_dense(f.field(), &vars, var, &q)?,
        MultiPoly::from_dense(f.field(), &vars, var, &r)?,
    ))
}

/// Monic gcd; `gcd(f, 0) = monic(f)`.
pub fn gcd_univariate(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    let (vars, fd, gd) = univariate_pair(f, g, var)?;
    if fd.is_empty() && gd.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let h = dense::gcd(f.field(), &fd, &gd);
    MultiPoly::from_dense(f.field(), &out_vars(&vars, var), var, &h)
}

fn rational_dense(f: &MultiPoly) -> Result<Vec<BigRational>> {
    if !matches!(f.field().kind(), FieldKind::Rationals) {
        return Err(Error::DescriptorMismatch(alloc::format!("real roots need Q, got {}", f.field())));
    }
    let var = f.univariate_var()?;
    Ok(f.to_dense(&var)?.iter().map(|c| c.as_rational().expect("rational").clone()).collect())
}

/// Number of distinct real roots of `f` in the open interval `(lo, hi)`.
pub fn sturm_count(f: &MultiPoly, lo: &BigRational, hi: &BigRational) -> Result<usize> {
    let coeffs = rational_dense(f)?;
    if coeffs.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    if lo >= hi {
        return Err(Error::InvalidInterval);
    }
    if qpoly::eval(&coeffs, lo).is_zero() || qpoly::eval(&coeffs, hi).is_zero() {
        return Err(Error::EndpointRoot);
    }
    let chain = qpoly::sturm_chain(&coeffs);
    Ok(qpoly::count_roots(&chain, lo, hi))
}

/// Open interval `(lo, hi)` with rational, non-root endpoints holding exactly one real root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo < x && x < &self.hi
    }
}

/// One disjoint isolating interval per distinct real root, increasing.
pub fn real_root_isolate(f: &MultiPoly) -> Result<Vec<RootInterval>> {
    let coeffs = rational_dense(f)?;
    Ok(qpoly::isolate(&coeffs)?.into_iter().map(|(lo, hi)| RootInterval { lo, hi }).collect())
}

/// Roots in a finite field with multiplicities, in enumeration order.
pub fn roots_over_finite_field(f: &MultiPoly, fd: &FieldDescriptor) -> Result<Vec<(FieldElement, usize)>> {
    if !fd.is_finite() {
        return Err(Error::InfiniteField);
    }
    let var = f.univariate_var()?;
    let coeffs: Vec<FieldElement> = f.to_dense(&var)?.iter().map(|c| convert_element(c, fd)).collect::<Result<_>>()?;
    let coeffs = dense::trimmed(coeffs);
    if coeffs.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    dense_roots(fd, &coeffs)
}

/// Exhaustive root scan of a dense polynomial over a finite field.
pub(crate) fn dense_roots(fd: &FieldDescriptor, coeffs: &[FieldElement]) -> Result<Vec<(FieldElement, usize)>> {
    let mut out = Vec::new();
    let mut remaining = coeffs.len() - 1;
    for r in fd.enumerate()? {
        if remaining == 0 {
            break;
        }
        if !dense::eval(coeffs, &r).is_zero() {
            continue;
        }
        let lin = vec![-&r, fd.one()];
        let mut cur = coeffs.to_vec();
        let mut mult = 0;
        loop {
            let (q, rem) = dense::divrem(fd, &cur, &lin);
            if !rem.is_empty() {
                break;
            }
            mult += 1;
            cur = q;
        }
        remaining -= mult;
        out.push((r, mult));
    }
    Ok(out)
}
