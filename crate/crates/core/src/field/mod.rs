//! Exact ground fields: ℚ, prime fields, simple extensions (towers allowed)
//! and rational function fields over finite fields.
//!
//! A [`FieldDescriptor`] is a cheap, shareable handle. Every [`FieldElement`]
//! carries its descriptor and is kept in canonical form, so equality is
//! structural.

pub mod dense;
mod galois;
mod irreducible;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

pub use galois::{finite_galois_data, frobenius_galois_data, GaloisExtensionData};
pub use irreducible::{first_irreducible, is_irreducible};

#[derive(Clone)]
pub struct FieldDescriptor(Arc<FieldKind>);

#[derive(Debug, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
    Extension(ExtensionData),
    Function(FunctionData),
}

/// `base[u]/(minpoly(u))`.
#[derive(Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub base: FieldDescriptor,
    /// Monic, low degree first, length `degree + 1`.
    pub minpoly: Vec<FieldElement>,
    pub generator: String,
}

/// `Frac(coeff[var])` with `coeff` finite.
#[derive(Debug, PartialEq, Eq)]
pub struct FunctionData {
    pub coeff: FieldDescriptor,
    pub var: String,
}

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for FieldDescriptor {}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "Fp({p})"),
            FieldKind::Extension(ext) => {
                let poly = dense_to_string(&ext.minpoly, &ext.generator);
                match &*ext.base.0 {
                    FieldKind::Prime(p) => write!(f, "Fq({p},{},{poly})", ext.minpoly.len() - 1),
                    FieldKind::Rationals => write!(f, "Q({},{poly})", ext.generator),
                    _ => write!(f, "Ext({},{poly})", ext.base),
                }
            }
            FieldKind::Function(func) => write!(f, "FF({},{})", func.coeff, func.var),
        }
    }
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor(Arc::new(FieldKind::Rationals))
    }

    /// `𝔽_p`; the modulus is checked by trial division and capped at 2^32.
    pub fn prime(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidDescriptor(format!("{p} is not prime")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::InvalidDescriptor(format!("modulus {p} exceeds 2^32")));
        }
        Ok(FieldDescriptor(Arc::new(FieldKind::Prime(p))))
    }

    /// Simple extension by a monic irreducible given densely (low degree first).
    pub fn extension(base: &FieldDescriptor, minpoly: Vec<FieldElement>, generator: &str) -> Result<Self> {
        let minpoly = dense::trimmed(minpoly);
        if minpoly.iter().any(|c| c.field() != base) {
            return Err(Error::DescriptorMismatch("minimal polynomial coefficients".into()));
        }
        if minpoly.len() < 2 {
            return Err(Error::InvalidDescriptor("minimal polynomial must have positive degree".into()));
        }
        if !minpoly.last().unwrap().is_one() {
            return Err(Error::InvalidDescriptor("minimal polynomial must be monic".into()));
        }
        irreducible::check_irreducible(base, &minpoly, generator)?;
        Ok(Self::extension_unchecked(base, minpoly, generator))
    }

    pub(crate) fn extension_unchecked(base: &FieldDescriptor, minpoly: Vec<FieldElement>, generator: &str) -> Self {
        FieldDescriptor(Arc::new(FieldKind::Extension(ExtensionData {
            base: base.clone(),
            minpoly,
            generator: generator.to_string(),
        })))
    }

    /// `𝔽_{p^d}` built with the first monic irreducible in lexicographic order.
    pub fn finite(p: u64, d: usize, generator: &str) -> Result<Self> {
        let base = Self::prime(p)?;
        if d == 1 {
            return Ok(base);
        }
        Self::extension_of_degree(&base, d, generator)
    }

    /// An extension of a finite field of the given degree.
    pub fn extension_of_degree(base: &FieldDescriptor, d: usize, generator: &str) -> Result<Self> {
        let minpoly = first_irreducible(base, d)?;
        Ok(Self::extension_unchecked(base, minpoly, generator))
    }

    pub fn function_field(coeff: &FieldDescriptor, var: &str) -> Result<Self> {
        if !coeff.is_finite() {
            return Err(Error::InvalidDescriptor("function fields need a finite coefficient field".into()));
        }
        Ok(FieldDescriptor(Arc::new(FieldKind::Function(FunctionData {
            coeff: coeff.clone(),
            var: var.to_string(),
        }))))
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn ptr_eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            FieldKind::Extension(e) => e.base.characteristic(),
            FieldKind::Function(func) => func.coeff.characteristic(),
        }
    }

    /// Number of elements, `None` for infinite fields or sizes beyond `u128`.
    pub fn cardinality(&self) -> Option<u128> {
        match &*self.0 {
            FieldKind::Prime(p) => Some(*p as u128),
            FieldKind::Extension(e) => {
                let q = e.base.cardinality()?;
                (0..e.degree()).try_fold(1u128, |acc, _| acc.checked_mul(q))
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        match &*self.0 {
            FieldKind::Prime(_) => true,
            FieldKind::Extension(e) => e.base.is_finite(),
            _ => false,
        }
    }

    pub fn extension_data(&self) -> Option<&ExtensionData> {
        match &*self.0 {
            FieldKind::Extension(e) => Some(e),
            _ => None,
        }
    }

    pub fn function_data(&self) -> Option<&FunctionData> {
        match &*self.0 {
            FieldKind::Function(func) => Some(func),
            _ => None,
        }
    }

    /// Degree over the immediate base (1 for non-extensions).
    pub fn degree(&self) -> usize {
        self.extension_data().map_or(1, ExtensionData::degree)
    }

    /// Name of the adjoined generator or function-field variable, if any.
    pub fn generator_name(&self) -> Option<&str> {
        match &*self.0 {
            FieldKind::Extension(e) => Some(&e.generator),
            FieldKind::Function(func) => Some(&func.var),
            _ => None,
        }
    }

    /// All generator names along the tower, innermost last.
    pub fn generator_names(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut cur = self.clone();
        loop {
            let next = match &*cur.0 {
                FieldKind::Extension(e) => {
                    out.push(e.generator.clone());
                    e.base.clone()
                }
                FieldKind::Function(func) => {
                    out.push(func.var.clone());
                    func.coeff.clone()
                }
                _ => return out,
            };
            cur = next;
        }
    }

    pub fn zero(&self) -> FieldElement {
        let repr = match &*self.0 {
            FieldKind::Rationals => Repr::Rational(BigRational::zero()),
            FieldKind::Prime(_) => Repr::Residue(0),
            FieldKind::Extension(e) => Repr::Coords(vec![e.base.zero(); e.degree()]),
            FieldKind::Function(func) => Repr::Fraction(Vec::new(), vec![func.coeff.one()]),
        };
        FieldElement { field: self.clone(), repr }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        match &*self.0 {
            FieldKind::Prime(p) => FieldElement { field: self.clone(), repr: Repr::Residue(n % p) },
            _ => self.from_bigint(&BigInt::from(n)),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let repr = match &*self.0 {
            FieldKind::Rationals => Repr::Rational(BigRational::from_integer(n.clone())),
            FieldKind::Prime(p) => Repr::Residue(arith::bigint_mod(n, *p)),
            FieldKind::Extension(e) => {
                let mut coords = vec![e.base.zero(); e.degree()];
                coords[0] = e.base.from_bigint(n);
                Repr::Coords(coords)
            }
            FieldKind::Function(func) => {
                Repr::Fraction(dense::trimmed(vec![func.coeff.from_bigint(n)]), vec![func.coeff.one()])
            }
        };
        FieldElement { field: self.clone(), repr }
    }

    /// Image of a rational number; fails when its denominator vanishes in the field.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        if let FieldKind::Rationals = &*self.0 {
            return Ok(FieldElement { field: self.clone(), repr: Repr::Rational(q.clone()) });
        }
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.checked_div(&den)
    }

    /// The adjoined element `u` of an extension, or `t` of a function field.
    pub fn generator(&self) -> Option<FieldElement> {
        match &*self.0 {
            FieldKind::Extension(e) => {
                let coeffs = vec![e.base.zero(), e.base.one()];
                Some(self.from_dense_unreduced(&coeffs))
            }
            FieldKind::Function(func) => Some(FieldElement {
                field: self.clone(),
                repr: Repr::Fraction(vec![func.coeff.zero(), func.coeff.one()], vec![func.coeff.one()]),
            }),
            _ => None,
        }
    }

    /// Build an extension element from its coordinates in the power basis.
    pub fn from_coords(&self, coords: Vec<FieldElement>) -> Result<FieldElement> {
        let e = self
            .extension_data()
            .ok_or_else(|| Error::DescriptorMismatch("coordinates need an extension field".into()))?;
        if coords.len() != e.degree() || coords.iter().any(|c| c.field != e.base) {
            return Err(Error::DescriptorMismatch("coordinate vector".into()));
        }
        Ok(FieldElement { field: self.clone(), repr: Repr::Coords(coords) })
    }

    /// Reduce a dense polynomial over the base modulo the minimal polynomial.
    pub fn from_dense_unreduced(&self, coeffs: &[FieldElement]) -> FieldElement {
        let e = self.extension_data().expect("extension field");
        let r = dense::rem(&e.base, coeffs, &e.minpoly);
        let mut coords = r;
        coords.resize(e.degree(), e.base.zero());
        FieldElement { field: self.clone(), repr: Repr::Coords(coords) }
    }

    /// Function-field element `num/den` with both given densely in the variable.
    pub fn fraction(&self, num: Vec<FieldElement>, den: Vec<FieldElement>) -> Result<FieldElement> {
        let func = self
            .function_data()
            .ok_or_else(|| Error::DescriptorMismatch("fractions need a function field".into()))?;
        let den = dense::trimmed(den);
        if den.is_empty() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement { field: self.clone(), repr: normalize_fraction(&func.coeff, num, den) })
    }

    /// Map an element of a subfield along the tower into this field.
    pub fn embed(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field == *self {
            return Ok(x.clone());
        }
        match &*self.0 {
            FieldKind::Extension(e) => {
                let inner = e.base.embed(x)?;
                let mut coords = vec![e.base.zero(); e.degree()];
                coords[0] = inner;
                Ok(FieldElement { field: self.clone(), repr: Repr::Coords(coords) })
            }
            FieldKind::Function(func) => {
                let inner = func.coeff.embed(x)?;
                Ok(FieldElement {
                    field: self.clone(),
                    repr: Repr::Fraction(dense::trimmed(vec![inner]), vec![func.coeff.one()]),
                })
            }
            _ => Err(Error::DescriptorMismatch(format!("{} does not embed into {}", x.field, self))),
        }
    }

    /// Is `sub` this field or a field below it in the tower?
    pub fn contains_subfield(&self, sub: &FieldDescriptor) -> bool {
        if self == sub {
            return true;
        }
        match &*self.0 {
            FieldKind::Extension(e) => e.base.contains_subfield(sub),
            FieldKind::Function(func) => func.coeff.contains_subfield(sub),
            _ => false,
        }
    }

    /// Element with the given position in the enumeration order.
    pub fn element_at(&self, mut index: u128) -> Result<FieldElement> {
        match &*self.0 {
            FieldKind::Prime(p) => {
                if index >= *p as u128 {
                    return Err(Error::BoundExceeded(format!("index {index} in {self}")));
                }
                Ok(FieldElement { field: self.clone(), repr: Repr::Residue(index as u64) })
            }
            FieldKind::Extension(e) => {
                let q = e.base.cardinality().ok_or(Error::InfiniteField)?;
                let d = e.degree();
                let mut coords = vec![e.base.zero(); d];
                for slot in coords.iter_mut().rev() {
                    *slot = e.base.element_at(index % q)?;
                    index /= q;
                }
                if index != 0 {
                    return Err(Error::BoundExceeded(format!("index out of range in {self}")));
                }
                Ok(FieldElement { field: self.clone(), repr: Repr::Coords(coords) })
            }
            _ => Err(Error::InfiniteField),
        }
    }

    /// All elements in lexicographic order of coordinate vectors.
    pub fn enumerate(&self) -> Result<Vec<FieldElement>> {
        let q = self.cardinality().ok_or(Error::InfiniteField)?;
        (0..q).map(|i| self.element_at(i)).collect()
    }

    /// A seeded random element; finite fields are sampled uniformly.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        match &*self.0 {
            FieldKind::Rationals => {
                let num: i64 = rng.gen_range(-9..=9);
                let den: i64 = rng.gen_range(1..=6);
                FieldElement {
                    field: self.clone(),
                    repr: Repr::Rational(BigRational::new(num.into(), den.into())),
                }
            }
            FieldKind::Function(func) => {
                let num_deg = rng.gen_range(0..=2usize);
                let den_deg = rng.gen_range(0..=1usize);
                let num: Vec<_> = (0..=num_deg).map(|_| func.coeff.random_element(rng)).collect();
                let mut den: Vec<_> = (0..den_deg).map(|_| func.coeff.random_element(rng)).collect();
                den.push(func.coeff.one());
                self.fraction(num, den).expect("monic denominator")
            }
            FieldKind::Extension(e) if !e.base.is_finite() => {
                let coords = (0..e.degree()).map(|_| e.base.random_element(rng)).collect();
                self.from_coords(coords).expect("base coordinates")
            }
            _ => {
                let q = self.cardinality().expect("finite field");
                self.element_at(rng.gen_range(0..q)).expect("index in range")
            }
        }
    }

    /// Irreducibility-checked extension by a univariate polynomial.
    pub fn make_extension(&self, minpoly: &MultiPoly) -> Result<FieldDescriptor> {
        make_extension(self, minpoly)
    }
}

impl ExtensionData {
    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }
}

/// Extend `base` by a root of the monic univariate `minpoly`.
///
/// Finite bases are checked by exhaustive factor search; over ℚ a rational
/// root test plus quadratic-factor search certifies degrees up to 4.
pub fn make_extension(base: &FieldDescriptor, minpoly: &MultiPoly) -> Result<FieldDescriptor> {
    let var = match minpoly.support_vars().as_slice() {
        [v] => v.clone(),
        [] => return Err(Error::InvalidDescriptor("minimal polynomial must have degree at least 2".into())),
        _ => return Err(Error::NotUnivariate(minpoly.to_string())),
    };
    if minpoly.field() != base {
        return Err(Error::DescriptorMismatch("minimal polynomial over another field".into()));
    }
    let coeffs = minpoly.to_dense(&var)?;
    if coeffs.len() < 3 {
        return Err(Error::InvalidDescriptor("minimal polynomial must have degree at least 2".into()));
    }
    FieldDescriptor::extension(base, coeffs, &var)
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Rational(BigRational),
    Residue(u64),
    Coords(Vec<FieldElement>),
    /// Numerator and monic denominator, coprime.
    Fraction(Vec<FieldElement>, Vec<FieldElement>),
}

/// An element of some [`FieldDescriptor`], in canonical form.
#[derive(Clone)]
pub struct FieldElement {
    field: FieldDescriptor,
    repr: Repr,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field == other.field
    }
}
impl Eq for FieldElement {}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order on canonical forms: numeric for ℚ and residues, lexicographic
/// on coordinate vectors for extensions (the enumeration order).
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue(a), Repr::Residue(b)) => a.cmp(b),
            (Repr::Coords(a), Repr::Coords(b)) => a.cmp(b),
            (Repr::Fraction(n1, d1), Repr::Fraction(n2, d2)) => {
                (n1.len(), n1, d1.len(), d1).cmp(&(n2.len(), n2, d2.len(), d2))
            }
            (a, b) => repr_rank(a).cmp(&repr_rank(b)),
        }
    }
}

fn repr_rank(r: &Repr) -> u8 {
    match r {
        Repr::Rational(_) => 0,
        Repr::Residue(_) => 1,
        Repr::Coords(_) => 2,
        Repr::Fraction(..) => 3,
    }
}

impl core::hash::Hash for FieldElement {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        match &self.repr {
            Repr::Rational(q) => q.hash(state),
            Repr::Residue(r) => r.hash(state),
            Repr::Coords(c) => c.hash(state),
            Repr::Fraction(n, d) => {
                n.hash(state);
                d.hash(state);
            }
        }
    }
}

fn normalize_fraction(coeff: &FieldDescriptor, num: Vec<FieldElement>, den: Vec<FieldElement>) -> Repr {
    let num = dense::trimmed(num);
    if num.is_empty() {
        return Repr::Fraction(Vec::new(), vec![coeff.one()]);
    }
    let g = dense::gcd(coeff, &num, &den);
    let (mut n, mut d) = if g.len() > 1 {
        (dense::divrem(coeff, &num, &g).0, dense::divrem(coeff, &den, &g).0)
    } else {
        (num, den)
    };
    let lead = d.last().expect("nonzero denominator").clone();
    if !lead.is_one() {
        let inv = lead.inv().expect("nonzero lead");
        n = dense::scale(&n, &inv);
        d = dense::scale(&d, &inv);
    }
    Repr::Fraction(n, d)
}

impl FieldElement {
    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(r) => *r == 0,
            Repr::Coords(c) => c.iter().all(FieldElement::is_zero),
            Repr::Fraction(n, _) => n.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_one(),
            Repr::Residue(r) => *r == 1,
            Repr::Coords(c) => c[0].is_one() && c[1..].iter().all(FieldElement::is_zero),
            Repr::Fraction(n, d) => n.len() == 1 && n[0].is_one() && d.len() == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.repr {
            Repr::Residue(r) => Some(*r),
            _ => None,
        }
    }

    /// Power-basis coordinates of an extension element.
    pub fn coords(&self) -> Option<&[FieldElement]> {
        match &self.repr {
            Repr::Coords(c) => Some(c),
            _ => None,
        }
    }

    /// Numerator and monic denominator of a function-field element.
    pub fn fraction_parts(&self) -> Option<(&[FieldElement], &[FieldElement])> {
        match &self.repr {
            Repr::Fraction(n, d) => Some((n, d)),
            _ => None,
        }
    }

    /// The element itself, pushed down one level, if it lies in the base of an extension.
    pub fn in_base(&self) -> Option<FieldElement> {
        let c = self.coords()?;
        c[1..].iter().all(FieldElement::is_zero).then(|| c[0].clone())
    }

    /// Pull the element down to `sub` when it lies there.
    pub fn restrict_to(&self, sub: &FieldDescriptor) -> Option<FieldElement> {
        if self.field == *sub {
            return Some(self.clone());
        }
        match &self.repr {
            Repr::Coords(_) => self.in_base()?.restrict_to(sub),
            Repr::Fraction(n, d) => {
                if d.len() == 1 && n.len() <= 1 {
                    let c = n.first().cloned().unwrap_or_else(|| d[0].field().zero());
                    c.restrict_to(sub)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Position in the enumeration order of a finite field.
    pub fn index(&self) -> Result<u128> {
        match &self.repr {
            Repr::Residue(r) => Ok(*r as u128),
            Repr::Coords(c) => {
                let q = c[0].field.cardinality().ok_or(Error::InfiniteField)?;
                c.iter().try_fold(0u128, |acc, x| Ok(acc * q + x.index()?))
            }
            _ => Err(Error::InfiniteField),
        }
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::DescriptorMismatch(format!("{} vs {}", self.field, other.field)))
        }
    }

    pub fn checked_add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn checked_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn checked_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &FieldElement) -> FieldElement {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Residue(a), Repr::Residue(b)) => {
                let p = self.modulus();
                Repr::Residue(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Repr::Coords(a), Repr::Coords(b)) => Repr::Coords(a.iter().zip(b).map(|(x, y)| x + y).collect()),
            (Repr::Fraction(n1, d1), Repr::Fraction(n2, d2)) => {
                let coeff = &self.field.function_data().expect("function field").coeff;
                if d1 == d2 {
                    normalize_fraction(coeff, dense::add(n1, n2), d1.clone())
                } else {
                    let num = dense::add(&dense::mul(coeff, n1, d2), &dense::mul(coeff, n2, d1));
                    normalize_fraction(coeff, num, dense::mul(coeff, d1, d2))
                }
            }
            _ => unreachable!("representation follows the descriptor"),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    fn mul_unchecked(&self, other: &FieldElement) -> FieldElement {
        let repr = match (&self.repr, &other.repr) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Residue(a), Repr::Residue(b)) => Repr::Residue(arith::mul_mod(*a, *b, self.modulus())),
            (Repr::Coords(a), Repr::Coords(b)) => {
                let e = self.field.extension_data().expect("extension");
                let prod = dense::mul(&e.base, a, b);
                let mut coords = dense::rem(&e.base, &prod, &e.minpoly);
                coords.resize(e.degree(), e.base.zero());
                Repr::Coords(coords)
            }
            (Repr::Fraction(n1, d1), Repr::Fraction(n2, d2)) => {
                let coeff = &self.field.function_data().expect("function field").coeff;
                normalize_fraction(coeff, dense::mul(coeff, n1, n2), dense::mul(coeff, d1, d2))
            }
            _ => unreachable!("representation follows the descriptor"),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    fn neg_ref(&self) -> FieldElement {
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Residue(a) => Repr::Residue(if *a == 0 { 0 } else { self.modulus() - a }),
            Repr::Coords(a) => Repr::Coords(a.iter().map(|x| -x).collect()),
            Repr::Fraction(n, d) => Repr::Fraction(dense::neg(n), d.clone()),
        };
        FieldElement { field: self.field.clone(), repr }
    }

    fn modulus(&self) -> u64 {
        match &*self.field.0 {
            FieldKind::Prime(p) => *p,
            _ => unreachable!("residues live in prime fields"),
        }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let repr = match &self.repr {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            Repr::Residue(a) => Repr::Residue(arith::inv_mod(*a, self.modulus()).expect("prime modulus")),
            Repr::Coords(a) => {
                let e = self.field.extension_data().expect("extension");
                let (g, s) = dense::gcd_cofactor(&e.base, &dense::trimmed(a.clone()), &e.minpoly);
                debug_assert!(g.len() == 1, "minimal polynomial is irreducible");
                let mut coords = dense::rem(&e.base, &s, &e.minpoly);
                coords.resize(e.degree(), e.base.zero());
                Repr::Coords(coords)
            }
            Repr::Fraction(n, d) => {
                let coeff = &self.field.function_data().expect("function field").coeff;
                normalize_fraction(coeff, d.clone(), n.clone())
            }
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn pow(&self, mut exp: u64) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, exp: &BigUint) -> FieldElement {
        let mut acc = self.field.one();
        for bit in (0..exp.bits()).rev() {
            acc = &acc * &acc;
            if exp.bit(bit) {
                acc = &acc * self;
            }
        }
        acc
    }

    /// Is this a perfect square in its (finite) field? Decided by exhaustive search.
    pub fn is_square_by_search(&self) -> Result<bool> {
        Ok(self.field.enumerate()?.iter().any(|x| &(x * x) == self))
    }

    /// Does the element print without surrounding parentheses in a product?
    pub(crate) fn is_atomic(&self) -> bool {
        match &self.repr {
            Repr::Rational(q) => q.is_integer() && !q.is_negative(),
            Repr::Residue(_) => true,
            Repr::Coords(c) => c[1..].iter().all(FieldElement::is_zero) && c[0].is_atomic(),
            Repr::Fraction(n, d) => d.len() == 1 && n.len() <= 1 && n.first().is_none_or(FieldElement::is_atomic),
        }
    }

    /// Rational value as an `f64`-free sign for ordered contexts.
    pub fn rational_sign(&self) -> Option<i8> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    /// Small integer value of a residue or integral rational, for diagnostics.
    pub fn to_i64(&self) -> Option<i64> {
        match &self.repr {
            Repr::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Repr::Residue(r) => i64::try_from(*r).ok(),
            _ => None,
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Rational(q) => write!(f, "{q}"),
            Repr::Residue(r) => write!(f, "{r}"),
            Repr::Coords(c) => {
                let gen = &self.field.extension_data().expect("extension").generator;
                f.write_str(&dense_to_string(c, gen))
            }
            Repr::Fraction(n, d) => {
                let var = &self.field.function_data().expect("function field").var;
                let num = dense_to_string(n, var);
                if d.len() == 1 {
                    f.write_str(&num)
                } else {
                    write!(f, "({num})/({})", dense_to_string(d, var))
                }
            }
        }
    }
}

/// Render a dense polynomial in the shared text grammar, highest degree first.
pub(crate) fn dense_to_string(coeffs: &[FieldElement], var: &str) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{deg}"),
        };
        push_term(&mut out, c, &mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Append `coeff*mono` to a sum being rendered, handling signs and parentheses.
pub(crate) fn push_term(out: &mut String, coeff: &FieldElement, mono: &str) {
    let (negative, magnitude) = match coeff.as_rational() {
        Some(q) if q.is_negative() => (true, FieldElement { field: coeff.field.clone(), repr: Repr::Rational(-q) }),
        _ => (false, coeff.clone()),
    };
    if out.is_empty() {
        if negative {
            out.push('-');
        }
    } else {
        out.push_str(if negative { " - " } else { " + " });
    }
    let text = magnitude.to_string();
    let wrapped = if magnitude.is_atomic() || (mono.is_empty() && magnitude.as_rational().is_some()) {
        text
    } else {
        format!("({text})")
    };
    if mono.is_empty() {
        out.push_str(&wrapped);
    } else if magnitude.is_one() {
        out.push_str(mono);
    } else {
        out.push_str(&wrapped);
        out.push('*');
        out.push_str(mono);
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    /// Panics on mismatched fields; use [`FieldElement::checked_add`] to get an error.
    fn add(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch in subtraction")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &'a FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_ref()
    }
}

/// Checked binary arithmetic, mirroring the four field operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn field_arith(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    match op {
        FieldOp::Add => a.checked_add(b),
        FieldOp::Sub => a.checked_sub(b),
        FieldOp::Mul => a.checked_mul(b),
        FieldOp::Div => a.checked_div(b),
    }
}

pub fn enumerate_field(fd: &FieldDescriptor) -> Result<Vec<FieldElement>> {
    fd.enumerate()
}

#[cfg(test)]
mod tests;
