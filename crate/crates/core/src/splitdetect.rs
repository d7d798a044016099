//! Splitting-detector ideals, the characteristic-p coefficient transform and
//! the complement-of-image pipeline for standard étale charts over finite
//! fields, with brute-force image computation.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{finite_galois_data, FieldDescriptor, FieldElement, FieldKind, GaloisExtensionData};
use crate::morphisms::StandardEtaleChart;
use crate::poly::{qpoly, MultiPoly};

/// Default cap on `(b, c)` pairs examined by exhaustive image computation.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Largest expanded `q`-generator kept; bigger ones stay in product form.
pub const DEFAULT_EXPANSION_TERMS: usize = 4_096;

pub type Point = Vec<FieldElement>;

/// `f, g ∈ K[x, y]` with `f` monic in `x`, and Galois data for `L/K`.
#[derive(Debug, Clone)]
pub struct SplittingInput {
    fiber_var: String,
    base_vars: Vec<String>,
    f: MultiPoly,
    g: MultiPoly,
    galois: GaloisExtensionData,
}

fn into_base(p: &MultiPoly, k: &FieldDescriptor, l: &FieldDescriptor) -> Result<MultiPoly> {
    if p.field() == k {
        return Ok(p.clone());
    }
    if p.field() != l {
        return Err(Error::DescriptorMismatch(format!("polynomial over {}, expected {k}", p.field())));
    }
    let mut terms = Vec::new();
    for (e, c) in p.terms() {
        let c = c.restrict_to(k).ok_or_else(|| Error::CoefficientNotInBase(c.to_string()))?;
        terms.push((e.clone(), c));
    }
    MultiPoly::from_terms(k, p.vars(), terms)
}

impl SplittingInput {
    /// `f` and `g` may be given over `K` or over `L` with coefficients in `K`;
    /// they are reindexed onto `[fiber_var] ++ base_vars`.
    pub fn new<S: AsRef<str>>(
        f: &MultiPoly,
        g: &MultiPoly,
        fiber_var: &str,
        base_vars: &[S],
        galois: &GaloisExtensionData,
    ) -> Result<Self> {
        let k = galois.base();
        let base_vars: Vec<String> = base_vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vars = vec![fiber_var.to_string()];
        vars.extend(base_vars.iter().cloned());
        let f = into_base(f, k, galois.ext())?.with_vars(&vars)?;
        let g = into_base(g, k, galois.ext())?.with_vars(&vars)?;
        if !f.is_monic_in(fiber_var) {
            return Err(Error::NotMonic(fiber_var.to_string()));
        }
        Ok(SplittingInput { fiber_var: fiber_var.to_string(), base_vars, f, g, galois: galois.clone() })
    }

    pub fn field(&self) -> &FieldDescriptor {
        self.galois.base()
    }

    pub fn fiber_var(&self) -> &str {
        &self.fiber_var
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    pub fn galois(&self) -> &GaloisExtensionData {
        &self.galois
    }

    /// `m = deg_x f`.
    pub fn degree(&self) -> usize {
        self.f.degree_in(&self.fiber_var)
    }

    /// `f(x, b)` and `g(x, b)` as dense polynomials over `K`.
    fn specialize(&self, b: &[FieldElement]) -> Result<(Vec<FieldElement>, Vec<FieldElement>)> {
        if b.len() != self.base_vars.len() {
            return Err(Error::ArityMismatch { expected: self.base_vars.len(), actual: b.len() });
        }
        let assignment: Vec<(&str, FieldElement)> =
            self.base_vars.iter().map(|v| v.as_str()).zip(b.iter().cloned()).collect();
        let fb = self.f.partial_eval(&assignment)?.to_dense(&self.fiber_var)?;
        let gb = self.g.partial_eval(&assignment)?.to_dense(&self.fiber_var)?;
        Ok((fb, gb))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    SplittingIdeal,
    Product,
    DisjointUnion,
    User,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::SplittingIdeal => "splitting-ideal",
            Provenance::Product => "product",
            Provenance::DisjointUnion => "disjoint-union",
            Provenance::User => "user",
        })
    }
}

/// A generator of a presentation's ideal, over `K` in the presentation's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Poly(MultiPoly),
    /// Coordinate `coord` (in the power basis of `ext` over `K`) of a product
    /// of `ext`-valued factors, each factor given by its `d` coordinate
    /// polynomials over `K`. Used when expanding the product would be too large.
    ExtProduct { ext: FieldDescriptor, factors: Vec<Vec<MultiPoly>>, coord: usize },
}

impl Generator {
    pub fn eval(&self, point: &[FieldElement]) -> Result<FieldElement> {
        match self {
            Generator::Poly(p) => p.eval(point),
            Generator::ExtProduct { ext, factors, coord } => {
                let mut acc = ext.one();
                for factor in factors {
                    let coords = factor.iter().map(|c| c.eval(point)).collect::<Result<Vec<_>>>()?;
                    acc = &acc * &ext.from_coords(coords)?;
                    if acc.is_zero() {
                        break;
                    }
                }
                Ok(acc.coords().expect("extension element")[*coord].clone())
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Generator::Poly(p) => p.is_zero(),
            Generator::ExtProduct { factors, .. } => factors.iter().any(|f| f.iter().all(MultiPoly::is_zero)),
        }
    }

    fn map_polys<F: FnMut(&MultiPoly) -> Result<MultiPoly>>(&self, mut f: F) -> Result<Generator> {
        Ok(match self {
            Generator::Poly(p) => Generator::Poly(f(p)?),
            Generator::ExtProduct { ext, factors, coord } => Generator::ExtProduct {
                ext: ext.clone(),
                factors: factors
                    .iter()
                    .map(|fac| fac.iter().map(&mut f).collect::<Result<Vec<_>>>())
                    .collect::<Result<_>>()?,
                coord: *coord,
            },
        })
    }

    pub fn with_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Generator> {
        self.map_polys(|p| p.with_vars(vars))
    }

    pub fn rename_vars(&self, map: &[(String, String)]) -> Generator {
        self.map_polys(|p| Ok(p.rename_vars(map))).expect("renaming cannot fail")
    }

    /// `s · self` for a polynomial `s` over `K`.
    pub fn scaled_by(&self, s: &MultiPoly) -> Result<Generator> {
        match self {
            Generator::Poly(p) => Ok(Generator::Poly(p.checked_mul(s)?)),
            Generator::ExtProduct { ext, factors, coord } => {
                let mut factor = vec![s.clone()];
                factor.resize(ext.degree(), MultiPoly::zero(s.field(), s.vars()));
                let mut factors = factors.clone();
                factors.push(factor);
                Ok(Generator::ExtProduct { ext: ext.clone(), factors, coord: *coord })
            }
        }
    }

    /// The generator as a single expanded polynomial, if it has at most `max_terms` terms.
    pub fn expand(&self, max_terms: usize) -> Result<Option<MultiPoly>> {
        match self {
            Generator::Poly(p) => Ok(Some(p.clone())),
            Generator::ExtProduct { ext, factors, coord } => {
                let Some(first) = factors.first().and_then(|f| f.first()) else {
                    return Ok(None);
                };
                let vars = first.vars().to_vec();
                let mut acc = MultiPoly::one(ext, &vars);
                for fac in factors {
                    let lifted = lift_coords(ext, fac)?;
                    match acc.mul_bounded(&lifted, max_terms)? {
                        Some(p) => acc = p,
                        None => return Ok(None),
                    }
                }
                Ok(Some(split_coords(&acc, ext.degree(), first.field(), &vars)?.swap_remove(*coord)))
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Poly(p) => write!(f, "{p}"),
            Generator::ExtProduct { factors, coord, .. } => {
                write!(f, "coord{coord}(")?;
                for (i, fac) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" * ")?;
                    }
                    let parts: Vec<String> = fac.iter().map(|c| format!("{c}")).collect();
                    write!(f, "[{}]", parts.join(", "))?;
                }
                f.write_str(")")
            }
        }
    }
}

/// `Σ_j coords[j] · α^j` as a polynomial over `ext`.
fn lift_coords(ext: &FieldDescriptor, coords: &[MultiPoly]) -> Result<MultiPoly> {
    let vars = coords[0].vars().to_vec();
    let alpha = ext.generator().expect("extension generator");
    let mut acc = MultiPoly::zero(ext, &vars);
    let mut pw = ext.one();
    for c in coords {
        acc = &acc + &c.change_field(ext)?.scale(&pw);
        pw = &pw * &alpha;
    }
    Ok(acc)
}

/// Split a polynomial over `L = K(α)` into its `d` coordinate polynomials over `K`,
/// reindexed onto `out_vars`.
fn split_coords<S: AsRef<str>>(p: &MultiPoly, d: usize, k: &FieldDescriptor, out_vars: &[S]) -> Result<Vec<MultiPoly>> {
    let mut parts: Vec<Vec<(Vec<u32>, FieldElement)>> = vec![Vec::new(); d];
    for (e, c) in p.terms() {
        let coords = c.coords().ok_or_else(|| Error::CoefficientNotInBase(c.to_string()))?;
        for (j, x) in coords.iter().enumerate() {
            if x.field() != k {
                return Err(Error::CoefficientNotInBase(x.to_string()));
            }
            if !x.is_zero() {
                parts[j].push((e.clone(), x.clone()));
            }
        }
    }
    parts
        .into_iter()
        .map(|terms| MultiPoly::from_terms(k, p.vars(), terms)?.with_vars(out_vars))
        .collect()
}

/// What the structured image solver needs to enumerate root orderings.
#[derive(Debug, Clone)]
pub struct SplittingLayout {
    pub input: SplittingInput,
}

/// Base variables `y`, fiber variables `z`, and generators of `I ⊆ K[y, z]`.
/// Its image is `{ b : ∃c, every generator vanishes at (b, c) }`.
#[derive(Debug, Clone)]
pub struct FinitePresentation {
    pub field: FieldDescriptor,
    pub base_vars: Vec<String>,
    pub fiber_vars: Vec<String>,
    pub generators: Vec<Generator>,
    pub provenance: Provenance,
    layout: Option<SplittingLayout>,
}

impl FinitePresentation {
    /// A user presentation; generators are reindexed onto `base_vars ++ fiber_vars`.
    pub fn new<S: AsRef<str>>(
        field: &FieldDescriptor,
        base_vars: &[S],
        fiber_vars: &[S],
        generators: Vec<MultiPoly>,
    ) -> Result<Self> {
        let base_vars: Vec<String> = base_vars.iter().map(|v| v.as_ref().to_string()).collect();
        let fiber_vars: Vec<String> = fiber_vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vars = base_vars.clone();
        vars.extend(fiber_vars.iter().cloned());
        let distinct: BTreeSet<&String> = vars.iter().collect();
        if distinct.len() != vars.len() {
            return Err(Error::DescriptorMismatch("repeated variable name".into()));
        }
        let generators = generators
            .into_iter()
            .map(|p| {
                if p.field() != field {
                    return Err(Error::DescriptorMismatch(format!("generator over {}", p.field())));
                }
                Ok(Generator::Poly(p.with_vars(&vars)?))
            })
            .collect::<Result<_>>()?;
        Ok(FinitePresentation {
            field: field.clone(),
            base_vars,
            fiber_vars,
            generators,
            provenance: Provenance::User,
            layout: None,
        })
    }

    pub(crate) fn from_parts(
        field: &FieldDescriptor,
        base_vars: Vec<String>,
        fiber_vars: Vec<String>,
        generators: Vec<Generator>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut vars = base_vars.clone();
        vars.extend(fiber_vars.iter().cloned());
        let generators = generators.iter().map(|g| g.with_vars(&vars)).collect::<Result<_>>()?;
        Ok(FinitePresentation { field: field.clone(), base_vars, fiber_vars, generators, provenance, layout: None })
    }

    /// `base_vars ++ fiber_vars`, the evaluation order of every generator.
    pub fn vars(&self) -> Vec<String> {
        let mut v = self.base_vars.clone();
        v.extend(self.fiber_vars.iter().cloned());
        v
    }

    pub fn layout(&self) -> Option<&SplittingLayout> {
        self.layout.as_ref()
    }

    fn vanishes_at(&self, point: &[FieldElement]) -> Result<bool> {
        for g in &self.generators {
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Tuning for [`build_splitting_ideal_with`].
#[derive(Debug, Clone, Copy)]
pub struct SplitOptions {
    pub expansion_terms: usize,
}

impl Default for SplitOptions {
    fn default() -> Self {
        SplitOptions { expansion_terms: DEFAULT_EXPANSION_TERMS }
    }
}

pub fn build_splitting_ideal(input: &SplittingInput) -> Result<FinitePresentation> {
    build_splitting_ideal_with(input, SplitOptions::default())
}

/// Fiber variable names `z{i}_{j}`, `i ≤ m`, `j ≤ d`.
pub fn fiber_var_names(m: usize, d: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(m * d);
    for i in 1..=m {
        for j in 1..=d {
            out.push(format!("z{i}_{j}"));
        }
    }
    out
}

/// The splitting-detector presentation: with `r_i = Σ_j α^{j-1} z_{i,j}`,
/// `h_{i,j}` are the `x^i α^j` coordinates of `f - ∏(x - r_i)` and `q_{i,j}`
/// the `α^j` coordinates of `g(r_i, y) · ∏_{j≠i} ∏_σ (σ(r_i) - r_j)`.
pub fn build_splitting_ideal_with(input: &SplittingInput, opts: SplitOptions) -> Result<FinitePresentation> {
    let k = input.field();
    let l = input.galois.ext();
    let d = input.galois.degree();
    let m = input.degree();
    let x = input.fiber_var.as_str();
    let z = fiber_var_names(m, d);
    let mut all = vec![x.to_string()];
    all.extend(input.base_vars.iter().cloned());
    all.extend(z.iter().cloned());
    let mut out_vars = input.base_vars.clone();
    out_vars.extend(z.iter().cloned());
    if all.iter().collect::<BTreeSet<_>>().len() != all.len() {
        return Err(Error::DescriptorMismatch("fiber variable names clash with the inputs".into()));
    }

    let f_l = input.f.change_field(l)?.with_vars(&all)?;
    let g_l = input.g.change_field(l)?.with_vars(&all)?;
    let xv = MultiPoly::var(l, &all, x)?;
    // r_i under each automorphism: conj[s][i] = σ_s(r_i)
    let conj: Vec<Vec<MultiPoly>> = input
        .galois
        .automorphisms()
        .iter()
        .map(|sigma| {
            (0..m)
                .map(|i| {
                    let mut r = MultiPoly::zero(l, &all);
                    for j in 0..d {
                        let zv = MultiPoly::var(l, &all, &z[i * d + j])?;
                        r = &r + &zv.scale(&sigma.pow(j as u64));
                    }
                    Ok(r)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let id = input
        .galois
        .automorphisms()
        .iter()
        .position(|s| Some(s) == l.generator().as_ref())
        .ok_or_else(|| Error::GaloisDataInvalid("identity automorphism missing".into()))?;
    let r = &conj[id];

    let mut generators = Vec::with_capacity(2 * m * d);
    let mut prod = MultiPoly::one(l, &all);
    for ri in r {
        prod = &prod * &(&xv - ri);
    }
    let h = &f_l - &prod;
    let coeffs = h.coefficients_in(x);
    for i in 0..m {
        let c = coeffs.get(i).cloned().unwrap_or_else(|| MultiPoly::zero(l, &all));
        for part in split_coords(&c, d, k, &out_vars)? {
            generators.push(Generator::Poly(part));
        }
    }

    for i in 0..m {
        let gi = g_l.substitute(x, &r[i])?.with_vars(&all)?;
        let mut factors = vec![gi];
        for (jj, rj) in r.iter().enumerate() {
            if jj == i {
                continue;
            }
            for sigma_r in &conj {
                factors.push(&sigma_r[i] - rj);
            }
        }
        let mut expanded = Some(MultiPoly::one(l, &all));
        for fac in &factors {
            expanded = match expanded {
                Some(acc) => acc.mul_bounded(fac, opts.expansion_terms)?,
                None => None,
            };
        }
        match expanded {
            Some(q) => {
                for part in split_coords(&q, d, k, &out_vars)? {
                    generators.push(Generator::Poly(part));
                }
            }
            None => {
                let factors = factors
                    .iter()
                    .map(|fac| split_coords(fac, d, k, &out_vars))
                    .collect::<Result<Vec<_>>>()?;
                for coord in 0..d {
                    generators.push(Generator::ExtProduct { ext: l.clone(), factors: factors.clone(), coord });
                }
            }
        }
    }

    Ok(FinitePresentation {
        field: k.clone(),
        base_vars: input.base_vars.clone(),
        fiber_vars: z,
        generators,
        provenance: Provenance::SplittingIdeal,
        layout: Some(SplittingLayout { input: input.clone() }),
    })
}

/// Does `f(x, b)` split over `L`, with every simple root lying in `K` a root of `g(x, b)`?
///
/// Finite `K` is decided by enumerating `L`. Over ℚ the decision is partial:
/// rational roots are found exactly, the remaining factors (degree ≤ 4) are
/// split off by a quadratic-factor search, and only cases that can be
/// certified are answered; the rest are [`Error::UnsupportedGroundField`].
pub fn splitting_condition_oracle(input: &SplittingInput, b: &[FieldElement]) -> Result<bool> {
    let k = input.field();
    let (fb, gb) = input.specialize(b)?;
    if k.is_finite() {
        let l = input.galois.ext();
        let fl: Vec<FieldElement> = fb.iter().map(|c| l.embed(c)).collect::<Result<_>>()?;
        let roots = crate::poly::univariate_dense_roots(l, &fl)?;
        let total: usize = roots.iter().map(|(_, mult)| mult).sum();
        if total < input.degree() {
            return Ok(false);
        }
        for (r, mult) in &roots {
            if *mult != 1 {
                continue;
            }
            if let Some(a) = r.restrict_to(k) {
                if !crate::field::dense::eval(&gb, &a).is_zero() {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    match k.kind() {
        FieldKind::Rationals => rational_oracle(input, &fb, &gb),
        _ => Err(Error::UnsupportedGroundField(format!("no splitting decision over {k}"))),
    }
}

fn to_q(v: &[FieldElement]) -> Vec<BigRational> {
    v.iter().map(|c| c.as_rational().expect("rational").clone()).collect()
}

fn is_rational_square(q: &BigRational) -> bool {
    if q.is_negative() {
        return false;
    }
    arith::exact_sqrt(q.numer()).is_some() && arith::exact_sqrt(q.denom()).is_some()
}

fn rational_oracle(input: &SplittingInput, fb: &[FieldElement], gb: &[FieldElement]) -> Result<bool> {
    let d = input.galois.degree();
    let m = input.degree();
    if m > 4 || d > 4 {
        return Err(Error::UnsupportedGroundField(format!("over Q only m, d <= 4 (got m = {m}, d = {d})")));
    }
    let unsupported = |why: &str| Error::UnsupportedGroundField(why.to_string());
    let mut rest = to_q(fb);
    let g = to_q(gb);
    let roots = qpoly::rational_roots(&rest).map_err(|_| unsupported("coefficients too large"))?;
    for r in &roots {
        let lin = vec![-r.clone(), BigRational::from_integer(BigInt::from(1))];
        let mut mult = 0;
        loop {
            let (q, rem) = qpoly::divrem(&rest, &lin);
            if !rem.is_empty() {
                break;
            }
            rest = q;
            mult += 1;
        }
        if mult == 1 && !qpoly::eval(&g, r).is_zero() {
            return Ok(false);
        }
    }
    // irreducible factors of the rational-root-free remainder
    let mut factors: Vec<Vec<BigRational>> = Vec::new();
    let deg = rest.len() - 1;
    match deg {
        0 => {}
        1 => unreachable!("linear factors have rational roots"),
        2 | 3 => factors.push(rest.clone()),
        4 => match qpoly::quadratic_factor(&rest).map_err(|_| unsupported("coefficients too large"))? {
            Some(q1) => {
                let (q2, _) = qpoly::divrem(&rest, &q1);
                factors.push(q1);
                factors.push(q2);
            }
            None => factors.push(rest.clone()),
        },
        _ => return Err(unsupported("fiber degree above 4")),
    }
    let minpoly = to_q(&input.galois.ext().extension_data().expect("extension").minpoly);
    let mut refused = None;
    for fac in &factors {
        let kdeg = fac.len() - 1;
        if d % kdeg != 0 {
            return Ok(false);
        }
        if kdeg == 2 && d == 2 {
            // roots of x^2 + Bx + C lie in Q(α) iff Δ / disc(minpoly) is a rational square
            let fac = qpoly::monic(fac);
            let delta = &fac[1] * &fac[1] - &fac[0] * BigRational::from_integer(4.into());
            let disc = &minpoly[1] * &minpoly[1] - &minpoly[0] * BigRational::from_integer(4.into());
            if !is_rational_square(&(delta / disc)) {
                return Ok(false);
            }
        } else {
            refused = Some(format!("cannot decide whether a degree-{kdeg} factor splits in a degree-{d} field"));
        }
    }
    match refused {
        Some(why) => Err(Error::UnsupportedGroundField(why)),
        None => Ok(true),
    }
}

fn check_finite_field(p: &FinitePresentation, fd: &FieldDescriptor) -> Result<u128> {
    let q = fd.cardinality().ok_or(Error::InfiniteField)?;
    if &p.field != fd {
        return Err(Error::DescriptorMismatch(format!("presentation over {}, image requested over {fd}", p.field)));
    }
    Ok(q)
}

fn pow_u128(q: u128, k: usize) -> Option<u128> {
    (0..k).try_fold(1u128, |acc, _| acc.checked_mul(q))
}

/// All points of `fd^n` in enumeration order.
pub fn grid(fd: &FieldDescriptor, n: usize) -> Result<Vec<Point>> {
    let elems = fd.enumerate()?;
    Ok(crate::morphisms::cartesian(&elems, n).collect())
}

/// Exhaustive image over `fd` with the default budget.
pub fn presentation_image(p: &FinitePresentation, fd: &FieldDescriptor) -> Result<Vec<Point>> {
    presentation_image_with_budget(p, fd, DEFAULT_BUDGET)
}

/// Exhaustive image: every `b`, every `c`. Fails fast with
/// [`Error::ExplosionGuard`] when `q^{n+|z|}` exceeds `budget`.
pub fn presentation_image_with_budget(p: &FinitePresentation, fd: &FieldDescriptor, budget: u128) -> Result<Vec<Point>> {
    let q = check_finite_field(p, fd)?;
    let needed = pow_u128(q, p.base_vars.len() + p.fiber_vars.len()).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::ExplosionGuard { needed, budget });
    }
    let evaluator = Evaluator::new(p, fd)?;
    let mut out = Vec::new();
    for b in grid(fd, p.base_vars.len())? {
        if evaluator.contains(&b)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Exhaustive membership of a single base point.
pub fn image_contains(p: &FinitePresentation, fd: &FieldDescriptor, b: &[FieldElement], budget: u128) -> Result<bool> {
    let q = check_finite_field(p, fd)?;
    let needed = pow_u128(q, p.fiber_vars.len()).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::ExplosionGuard { needed, budget });
    }
    if b.len() != p.base_vars.len() {
        return Err(Error::ArityMismatch { expected: p.base_vars.len(), actual: b.len() });
    }
    Evaluator::new(p, fd)?.contains(b)
}

/// Image of a presentation, using the splitting layout when one is present.
///
/// For a splitting-ideal presentation the `h`-generators vanish at `(b, c)`
/// exactly when `(r_1(c), …, r_m(c))` is an ordering of the roots of
/// `f(x, b)` in `L`, and `c ↦ (r_i(c))` is a bijection `K^{md} → L^m`. So it
/// suffices to test each ordering of the root multiset, instead of every `c`.
pub fn presentation_image_structured(p: &FinitePresentation, fd: &FieldDescriptor) -> Result<Vec<Point>> {
    let Some(layout) = &p.layout else {
        return presentation_image(p, fd);
    };
    check_finite_field(p, fd)?;
    let mut out = Vec::new();
    for b in grid(fd, p.base_vars.len())? {
        if structured_contains(p, layout, &b)? {
            out.push(b);
        }
    }
    Ok(out)
}

/// Single-point version of [`presentation_image_structured`].
pub fn image_contains_structured(p: &FinitePresentation, fd: &FieldDescriptor, b: &[FieldElement]) -> Result<bool> {
    check_finite_field(p, fd)?;
    match &p.layout {
        Some(layout) => structured_contains(p, layout, b),
        None => image_contains(p, fd, b, DEFAULT_BUDGET),
    }
}

fn structured_contains(p: &FinitePresentation, layout: &SplittingLayout, b: &[FieldElement]) -> Result<bool> {
    let input = &layout.input;
    let l = input.galois.ext();
    let m = input.degree();
    let (fb, _) = input.specialize(b)?;
    let fl: Vec<FieldElement> = fb.iter().map(|c| l.embed(c)).collect::<Result<_>>()?;
    let roots = crate::poly::univariate_dense_roots(l, &fl)?;
    let mut multiset = Vec::with_capacity(m);
    for (r, mult) in &roots {
        for _ in 0..*mult {
            multiset.push(r.clone());
        }
    }
    if multiset.len() < m {
        return Ok(false);
    }
    let mut point = b.to_vec();
    point.resize(b.len() + p.fiber_vars.len(), p.field.zero());
    for ordering in distinct_permutations(&multiset) {
        for (i, r) in ordering.iter().enumerate() {
            let coords = r.coords().expect("extension element");
            for (j, c) in coords.iter().enumerate() {
                point[b.len() + i * coords.len() + j] = c.clone();
            }
        }
        if p.vanishes_at(&point)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Distinct orderings of a multiset (input sorted or not).
fn distinct_permutations(items: &[FieldElement]) -> Vec<Vec<FieldElement>> {
    let mut sorted = items.to_vec();
    sorted.sort();
    let mut out = vec![sorted.clone()];
    // next lexicographic permutation until exhausted
    loop {
        let n = sorted.len();
        let Some(i) = (1..n).rev().find(|&i| sorted[i - 1] < sorted[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| sorted[j] > sorted[i - 1]).expect("successor exists");
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
        out.push(sorted.clone());
    }
    out
}

/// Evaluates generators at integer-coded points, with a `u64` fast path for prime fields.
struct Evaluator<'a> {
    p: &'a FinitePresentation,
    elems: Vec<FieldElement>,
    compiled: Option<Vec<CompiledPoly>>,
}

struct CompiledPoly {
    modulus: u64,
    terms: Vec<(u64, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    fn new(poly: &MultiPoly, modulus: u64) -> Self {
        let terms = poly
            .terms()
            .map(|(e, c)| {
                let vars = e.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (i, k)).collect();
                (c.as_residue().expect("prime field coefficient"), vars)
            })
            .collect();
        CompiledPoly { modulus, terms }
    }

    fn eval(&self, point: &[u64]) -> u64 {
        let p = self.modulus;
        let mut acc = 0u64;
        for (c, vars) in &self.terms {
            let mut t = *c;
            for &(i, k) in vars {
                let x = point[i];
                if x == 0 {
                    t = 0;
                    break;
                }
                for _ in 0..k {
                    t = arith::mul_mod(t, x, p);
                }
            }
            acc = (acc + t) % p;
        }
        acc
    }
}

impl<'a> Evaluator<'a> {
    fn new(p: &'a FinitePresentation, fd: &FieldDescriptor) -> Result<Self> {
        let elems = fd.enumerate()?;
        let compiled = match fd.kind() {
            FieldKind::Prime(modulus) => p
                .generators
                .iter()
                .map(|g| match g {
                    Generator::Poly(poly) => Some(CompiledPoly::new(poly, *modulus)),
                    Generator::ExtProduct { .. } => None,
                })
                .collect::<Option<Vec<_>>>(),
            _ => None,
        };
        Ok(Evaluator { p, elems, compiled })
    }

    fn contains(&self, b: &[FieldElement]) -> Result<bool> {
        let n = b.len();
        let nz = self.p.fiber_vars.len();
        let q = self.elems.len();
        if let Some(compiled) = &self.compiled {
            let mut point: Vec<u64> = b.iter().map(|x| x.as_residue().expect("prime field point")).collect();
            point.resize(n + nz, 0);
            loop {
                if compiled.iter().all(|c| c.eval(&point) == 0) {
                    return Ok(true);
                }
                if !odometer_u64(&mut point[n..], q as u64) {
                    return Ok(false);
                }
            }
        }
        let mut idx = vec![0usize; nz];
        let mut point = b.to_vec();
        point.resize(n + nz, self.elems[0].clone());
        loop {
            for (slot, &i) in point[n..].iter_mut().zip(&idx) {
                *slot = self.elems[i].clone();
            }
            if self.p.vanishes_at(&point)? {
                return Ok(true);
            }
            if !odometer(&mut idx, q) {
                return Ok(false);
            }
        }
    }
}

/// Advance a little-endian-at-the-back counter; false once it wraps.
fn odometer(idx: &mut [usize], q: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < q {
            return true;
        }
        *slot = 0;
    }
    false
}

fn odometer_u64(idx: &mut [u64], q: u64) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < q {
            return true;
        }
        *slot = 0;
    }
    false
}

/// Raise every coefficient polynomial (in the base variables) of `f` and `g`
/// to the `p^k`-th power, keeping the `x`-exponents.
pub fn charp_transform(f: &MultiPoly, g: &MultiPoly, fiber_var: &str, p: u64, k: u32) -> Result<(MultiPoly, MultiPoly)> {
    for poly in [f, g] {
        let actual = poly.field().characteristic();
        if actual != p {
            return Err(Error::CharMismatch { expected: p, actual });
        }
    }
    let power = p.checked_pow(k).ok_or_else(|| Error::BoundExceeded(format!("{p}^{k}")))?;
    let m = f.degree_in(fiber_var);
    if power <= m as u64 {
        return Err(Error::ExponentTooSmall { power, degree: m });
    }
    let transform = |poly: &MultiPoly| -> Result<MultiPoly> {
        if poly.is_zero() {
            return Ok(poly.clone());
        }
        let coeffs: Vec<MultiPoly> = poly.coefficients_in(fiber_var).iter().map(|c| c.pow(power)).collect();
        MultiPoly::from_coefficients_in(fiber_var, &coeffs)?.with_vars(poly.vars())
    };
    Ok((transform(f)?, transform(g)?))
}

/// A seeded instance over `𝔽_p` with `L = 𝔽_{p^d}`: `f` monic of degree `m`
/// in `x` with coefficients affine in the `y`s (a product of affine linear
/// factors one time in three, so splitting cases are common), and `g` of
/// degree below `m` in `x` (zero one time in six).
pub fn random_splitting_input(p: u64, m: usize, d: usize, n: usize, seed: u64) -> Result<SplittingInput> {
    use rand::{Rng, SeedableRng};
    let k = FieldDescriptor::prime(p)?;
    let l = FieldDescriptor::extension_of_degree(&k, d, "a")?;
    let galois = finite_galois_data(&l)?;
    let base = crate::morphisms::base_var_names(n);
    let mut vars = vec!["x".to_string()];
    vars.extend(base.iter().cloned());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let affine = |rng: &mut rand_chacha::ChaCha8Rng| -> Result<MultiPoly> {
        let mut terms = vec![(vec![0; n + 1], k.random_element(rng))];
        for i in 0..n {
            if rng.gen_bool(0.6) {
                let mut e = vec![0; n + 1];
                e[i + 1] = 1;
                terms.push((e, k.random_element(rng)));
            }
        }
        MultiPoly::from_terms(&k, &vars, terms)
    };
    let x = MultiPoly::var(&k, &vars, "x")?;
    let f = if rng.gen_range(0..3) == 0 {
        let mut acc = MultiPoly::one(&k, &vars);
        for _ in 0..m {
            acc = &acc * &(&x - &affine(&mut rng)?);
        }
        acc
    } else {
        let mut coeffs = (0..m).map(|_| affine(&mut rng)).collect::<Result<Vec<_>>>()?;
        coeffs.push(MultiPoly::one(&k, &vars));
        MultiPoly::from_coefficients_in("x", &coeffs)?
    };
    let g = if rng.gen_range(0..6) == 0 {
        MultiPoly::zero(&k, &vars)
    } else {
        let coeffs = (0..m).map(|_| affine(&mut rng)).collect::<Result<Vec<_>>>()?;
        MultiPoly::from_coefficients_in("x", &coeffs)?
    };
    SplittingInput::new(&f, &g, "x", &base, &galois)
}

/// Name of the generator of the auxiliary extension in complement presentations.
pub const COMPLEMENT_GENERATOR: &str = "alpha";

/// A presentation whose image over `fd` is the complement of the chart's image:
/// the splitting ideal of `(f, g)` over the extension of degree `lcm(1..m)`,
/// which contains a copy of every extension of degree at most `m`.
pub fn complement_presentation(chart: &StandardEtaleChart, fd: &FieldDescriptor) -> Result<FinitePresentation> {
    if !fd.is_finite() {
        return Err(Error::InfiniteField);
    }
    if chart.field() != fd {
        return Err(Error::DescriptorMismatch(format!("chart over {}, complement over {fd}", chart.field())));
    }
    let degree = arith::lcm_range(chart.degree());
    let l = FieldDescriptor::extension_of_degree(fd, degree, COMPLEMENT_GENERATOR)?;
    let galois = finite_galois_data(&l)?;
    let input = SplittingInput::new(chart.f(), chart.g(), chart.fiber_var(), chart.base_vars(), &galois)?;
    build_splitting_ideal(&input)
}

#[cfg(test)]
mod tests;
