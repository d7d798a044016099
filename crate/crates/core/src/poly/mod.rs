//! Sparse multivariate polynomials over any [`FieldDescriptor`], plus the
//! univariate, resultant, determinant and real-root machinery built on them.

mod map;
pub mod qpoly;
mod resultant;
mod univariate;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{dense, push_term, FieldDescriptor, FieldElement, FieldKind};

pub use map::PolyMap;
pub use resultant::{
    determinant, determinant_cofactor, jacobian_det, jacobian_matrix, sylvester_matrix, sylvester_resultant,
};
pub(crate) use univariate::dense_roots as univariate_dense_roots;
pub use univariate::{
    gcd_univariate, real_root_isolate, roots_over_finite_field, sturm_count, univariate_divmod, RootInterval,
};

/// Exponent vector, one entry per variable of the owning polynomial.
pub type Monomial = Vec<u32>;

/// A polynomial with a named, ordered variable list and no stored zero terms.
///
/// Terms are keyed by exponent vector in lexicographic order (first variable
/// most significant), which doubles as the monomial order for exact division.
#[derive(Clone)]
pub struct MultiPoly {
    field: FieldDescriptor,
    vars: Vec<String>,
    terms: BTreeMap<Monomial, FieldElement>,
}

fn owned_vars<S: AsRef<str>>(vars: &[S]) -> Vec<String> {
    vars.iter().map(|v| v.as_ref().to_string()).collect()
}

impl MultiPoly {
    pub fn zero<S: AsRef<str>>(field: &FieldDescriptor, vars: &[S]) -> Self {
        MultiPoly { field: field.clone(), vars: owned_vars(vars), terms: BTreeMap::new() }
    }

    pub fn constant<S: AsRef<str>>(field: &FieldDescriptor, vars: &[S], c: FieldElement) -> Self {
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(field: &FieldDescriptor, vars: &[S]) -> Self {
        Self::constant(field, vars, field.one())
    }

    /// The polynomial consisting of a single variable from `vars`.
    pub fn var<S: AsRef<str>>(field: &FieldDescriptor, vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(field, vars);
        let i = p.var_index(name).ok_or_else(|| Error::DescriptorMismatch(format!("unknown variable {name}")))?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, field.one());
        Ok(p)
    }

    /// Build from `(exponents, coefficient)` pairs; like terms are summed.
    pub fn from_terms<S, I>(field: &FieldDescriptor, vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut p = Self::zero(field, vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(Error::ArityMismatch { expected: p.vars.len(), actual: e.len() });
            }
            if c.field() != field {
                return Err(Error::DescriptorMismatch(format!("coefficient over {}", c.field())));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Dense univariate constructor, coefficients low degree first.
    pub fn from_dense<S: AsRef<str>>(field: &FieldDescriptor, vars: &[S], var: &str, coeffs: &[FieldElement]) -> Result<Self> {
        let mut p = Self::zero(field, vars);
        let i = p.var_index(var).ok_or_else(|| Error::DescriptorMismatch(format!("unknown variable {var}")))?;
        for (deg, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; p.vars.len()];
                e[i] = deg as u32;
                p.add_term(e, c.clone());
            }
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> + '_ {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<FieldElement> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(|| self.field.zero()))
    }

    pub fn coefficient(&self, e: &[u32]) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Variables that occur with positive exponent.
    pub fn support_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn degree_in(&self, var: &str) -> usize {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i] as usize).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().map(|&x| x as usize).sum()).max().unwrap_or(0)
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back()
    }

    /// Reindex onto a new variable list that covers every variable in use.
    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let vars = owned_vars(vars);
        if vars == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|e| e[i] == 0) => map.push(None),
                None => return Err(Error::DescriptorMismatch(format!("variable {v} missing from target list"))),
            }
        }
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (i, &x) in e.iter().enumerate() {
                if let Some(j) = map[i] {
                    ne[j] = x;
                }
            }
            terms.insert(ne, c.clone());
        }
        Ok(MultiPoly { field: self.field.clone(), vars, terms })
    }

    /// Union of two variable lists, `self`'s order first.
    pub fn merged_vars(&self, other: &MultiPoly) -> Vec<String> {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars
    }

    fn aligned(&self, other: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
        if self.field != other.field {
            return Err(Error::DescriptorMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.vars == other.vars {
            return Ok((self.clone(), other.clone()));
        }
        let vars = self.merged_vars(other);
        Ok((self.with_vars(&vars)?, other.with_vars(&vars)?))
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        if self.field == other.field && self.vars == other.vars {
            let mut out = self.clone();
            for (e, c) in &other.terms {
                out.add_term(e.clone(), c.clone());
            }
            return Ok(out);
        }
        let (mut a, b) = self.aligned(other)?;
        for (e, c) in b.terms {
            a.add_term(e, c);
        }
        Ok(a)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.checked_add(&other.neg_ref())
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        let (a, b) = if self.field == other.field && self.vars == other.vars {
            (self.clone(), other.clone())
        } else {
            self.aligned(other)?
        };
        let mut out = MultiPoly::zero(&a.field, &a.vars);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Multiply, giving up once the product would exceed `max_terms` terms.
    pub fn mul_bounded(&self, other: &MultiPoly, max_terms: usize) -> Result<Option<MultiPoly>> {
        let (a, b) = self.aligned(other)?;
        if a.num_terms().saturating_mul(b.num_terms()) <= max_terms {
            return Ok(Some(a.checked_mul(&b)?));
        }
        let mut out = MultiPoly::zero(&a.field, &a.vars);
        for (e1, c1) in &a.terms {
            for (e2, c2) in &b.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
                out.add_term(e, c1 * c2);
            }
            if out.num_terms() > max_terms {
                return Ok(None);
            }
        }
        Ok(Some(out))
    }

    fn neg_ref(&self) -> MultiPoly {
        MultiPoly {
            field: self.field.clone(),
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, &self.vars);
        if !c.is_zero() {
            for (e, x) in &self.terms {
                out.terms.insert(e.clone(), x * c);
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u64) -> MultiPoly {
        let mut acc = MultiPoly::one(&self.field, &self.vars);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate at a point ordered like [`Self::vars`].
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        if point.len() != self.vars.len() {
            return Err(Error::ArityMismatch { expected: self.vars.len(), actual: point.len() });
        }
        if let Some(x) = point.iter().find(|x| x.field() != &self.field) {
            return Err(Error::DescriptorMismatch(format!("point coordinate in {}", x.field())));
        }
        // cache powers per variable
        let mut powers: Vec<Vec<FieldElement>> = point.iter().map(|x| vec![self.field.one(), x.clone()]).collect();
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let table = &mut powers[i];
                while table.len() <= k as usize {
                    let next = &table[table.len() - 1] * &table[1];
                    table.push(next);
                }
                term = &term * &table[k as usize];
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }

    /// Substitute constants for some variables; the variable list is kept.
    pub fn partial_eval(&self, assignment: &[(&str, FieldElement)]) -> Result<MultiPoly> {
        let mut idx = Vec::new();
        for (name, val) in assignment {
            if val.field() != &self.field {
                return Err(Error::DescriptorMismatch(format!("value for {name}")));
            }
            if let Some(i) = self.var_index(name) {
                idx.push((i, val));
            }
        }
        let mut out = MultiPoly::zero(&self.field, &self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let mut coeff = c.clone();
            for (i, val) in &idx {
                if ne[*i] > 0 {
                    coeff = &coeff * &val.pow(ne[*i] as u64);
                    ne[*i] = 0;
                }
            }
            out.add_term(ne, coeff);
        }
        Ok(out)
    }

    /// Compose: replace `var` by the polynomial `value`.
    pub fn substitute(&self, var: &str, value: &MultiPoly) -> Result<MultiPoly> {
        if self.var_index(var).is_none() {
            return Ok(self.clone());
        }
        let coeffs = self.coefficients_in(var);
        let vars = self.merged_vars(value);
        let value = value.with_vars(&vars)?;
        let mut acc = MultiPoly::zero(&self.field, &vars);
        // Horner in `var`
        for c in coeffs.iter().rev() {
            acc = acc.checked_mul(&value)?.checked_add(&c.with_vars(&vars)?)?;
        }
        Ok(acc)
    }

    /// Coefficients with respect to `var`, index = degree. Each coefficient
    /// keeps the full variable list with `var`'s exponent zero.
    pub fn coefficients_in(&self, var: &str) -> Vec<MultiPoly> {
        let Some(i) = self.var_index(var) else {
            return vec![self.clone()];
        };
        let deg = self.degree_in(var);
        let mut out = vec![MultiPoly::zero(&self.field, &self.vars); deg + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut ne = e.clone();
            ne[i] = 0;
            out[k].terms.insert(ne, c.clone());
        }
        out
    }

    /// Inverse of [`Self::coefficients_in`].
    pub fn from_coefficients_in(var: &str, coeffs: &[MultiPoly]) -> Result<MultiPoly> {
        let first = coeffs.first().ok_or(Error::ZeroPolynomial)?;
        let mut vars = first.vars.clone();
        if !vars.iter().any(|v| v == var) {
            vars.push(var.to_string());
        }
        let i = vars.iter().position(|v| v == var).expect("present");
        let mut out = MultiPoly::zero(&first.field, &vars);
        for (k, c) in coeffs.iter().enumerate() {
            let c = c.with_vars(&vars)?;
            if c.degree_in(var) > 0 {
                return Err(Error::DescriptorMismatch(format!("coefficient depends on {var}")));
            }
            for (e, x) in c.terms {
                let mut ne = e;
                ne[i] = k as u32;
                out.add_term(ne, x);
            }
        }
        Ok(out)
    }

    pub fn leading_coefficient_in(&self, var: &str) -> MultiPoly {
        self.coefficients_in(var).pop().expect("nonempty coefficient list")
    }

    pub fn is_monic_in(&self, var: &str) -> bool {
        let lc = self.leading_coefficient_in(var);
        self.degree_in(var) >= 1 && lc.constant_value().is_some_and(|c| c.is_one())
    }

    /// Dense coefficients in `var`; every other variable must be absent.
    pub fn to_dense(&self, var: &str) -> Result<Vec<FieldElement>> {
        let i = self.var_index(var);
        let mut out = Vec::new();
        for (e, c) in &self.terms {
            let k = match i {
                Some(i) => {
                    if e.iter().enumerate().any(|(j, &x)| j != i && x > 0) {
                        return Err(Error::NotUnivariate(var.to_string()));
                    }
                    e[i] as usize
                }
                None => {
                    if e.iter().any(|&x| x > 0) {
                        return Err(Error::NotUnivariate(var.to_string()));
                    }
                    0
                }
            };
            if out.len() <= k {
                out.resize(k + 1, self.field.zero());
            }
            out[k] = c.clone();
        }
        Ok(dense::trimmed(out))
    }

    /// The single variable a univariate polynomial uses (any name if constant).
    pub fn univariate_var(&self) -> Result<String> {
        let support = self.support_vars();
        match support.as_slice() {
            [] => Ok(self.vars.first().cloned().unwrap_or_else(|| "x".into())),
            [v] => Ok(v.clone()),
            _ => Err(Error::NotUnivariate(support.join(","))),
        }
    }

    /// Formal partial derivative.
    pub fn derivative(&self, var: &str) -> MultiPoly {
        let mut out = MultiPoly::zero(&self.field, &self.vars);
        let Some(i) = self.var_index(var) else {
            return out;
        };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c * &self.field.from_u64(e[i] as u64));
        }
        out
    }

    /// Exact quotient by `d` if `d` divides `self`, else `None`.
    pub fn div_exact(&self, d: &MultiPoly) -> Result<Option<MultiPoly>> {
        if d.is_zero() {
            return Err(Error::DivisionByZeroPoly);
        }
        let (mut rem, d) = self.aligned(d)?;
        let (de, dc) = d.leading_term().map(|(e, c)| (e.clone(), c.clone())).expect("nonzero divisor");
        let dinv = dc.inv()?;
        let mut quot = MultiPoly::zero(&rem.field, &rem.vars);
        while let Some((e, c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if e.iter().zip(&de).any(|(a, b)| a < b) {
                return Ok(None);
            }
            let qe: Monomial = e.iter().zip(&de).map(|(a, b)| a - b).collect();
            let qc = &c * &dinv;
            for (te, tc) in &d.terms {
                let me: Monomial = te.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(me, -&(tc * &qc));
            }
            quot.add_term(qe, qc);
        }
        Ok(Some(quot))
    }

    /// Map every coefficient into another field (embedding along a tower or
    /// reducing rational constants).
    pub fn change_field(&self, target: &FieldDescriptor) -> Result<MultiPoly> {
        if &self.field == target {
            return Ok(self.clone());
        }
        let mut out = MultiPoly::zero(target, &self.vars);
        for (e, c) in &self.terms {
            let mapped = convert_element(c, target)?;
            out.add_term(e.clone(), mapped);
        }
        Ok(out)
    }

    pub fn map_coefficients<F>(&self, target: &FieldDescriptor, mut f: F) -> MultiPoly
    where
        F: FnMut(&FieldElement) -> FieldElement,
    {
        let mut out = MultiPoly::zero(target, &self.vars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// Rename variables (names absent from `map` are kept).
    pub fn rename_vars(&self, map: &[(String, String)]) -> MultiPoly {
        let vars = self
            .vars
            .iter()
            .map(|v| map.iter().find(|(from, _)| from == v).map_or_else(|| v.clone(), |(_, to)| to.clone()))
            .collect();
        MultiPoly { field: self.field.clone(), vars, terms: self.terms.clone() }
    }

    fn monomial_string(&self, e: &[u32]) -> String {
        let mut parts = Vec::new();
        for (v, &k) in self.vars.iter().zip(e) {
            match k {
                0 => {}
                1 => parts.push(v.clone()),
                _ => parts.push(format!("{v}^{k}")),
            }
        }
        parts.join("*")
    }
}

/// Move a field element into `target`: embedding along a tower, or reading a
/// rational/integer constant into another field.
pub fn convert_element(c: &FieldElement, target: &FieldDescriptor) -> Result<FieldElement> {
    if c.field() == target {
        return Ok(c.clone());
    }
    if target.contains_subfield(c.field()) {
        return target.embed(c);
    }
    if let Some(q) = c.as_rational() {
        return target.from_rational(q);
    }
    if let (Some(r), FieldKind::Prime(p)) = (c.as_residue(), c.field().kind()) {
        if target.characteristic() == *p {
            return Ok(target.from_u64(r));
        }
    }
    if let Some(sub) = c.restrict_to(&prime_subfield_of(c.field())) {
        if sub.field() != c.field() {
            return convert_element(&sub, target);
        }
    }
    Err(Error::DescriptorMismatch(format!("cannot move {c} from {} into {target}", c.field())))
}

fn prime_subfield_of(f: &FieldDescriptor) -> FieldDescriptor {
    match f.kind() {
        FieldKind::Extension(e) => prime_subfield_of(&e.base),
        FieldKind::Function(func) => prime_subfield_of(&func.coeff),
        _ => f.clone(),
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.field != other.field {
            return false;
        }
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        match self.aligned(other) {
            Ok((a, b)) => a.terms == b.terms,
            Err(_) => false,
        }
    }
}
impl Eq for MultiPoly {}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}] over {}", self, self.vars.join(","), self.field)
    }
}

/// Renders in the shared text grammar, terms in decreasing lexicographic order.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (e, c) in self.terms.iter().rev() {
            push_term(&mut out, c, &self.monomial_string(e));
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    /// Panics on mismatched fields; [`MultiPoly::checked_add`] reports instead.
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("field mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("field mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("field mismatch in polynomial multiplication")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

pub fn poly_arith(p: &MultiPoly, q: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => p.checked_add(q),
        PolyOp::Sub => p.checked_sub(q),
        PolyOp::Mul => p.checked_mul(q),
    }
}

pub fn derivative(p: &MultiPoly, var: &str) -> MultiPoly {
    p.derivative(var)
}

#[cfg(test)]
mod tests;
