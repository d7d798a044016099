//! Brute-force laboratory over finite fields and `𝔽_4(t)`: projective point
//! enumeration, images of polynomial maps, the product and disjoint-union
//! closure laws for presentations, and the counterexample checks.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{dense, FieldDescriptor, FieldElement};
use crate::morphisms::cartesian;
use crate::poly::{gcd_univariate, MultiPoly, PolyMap};
use crate::splitdetect::{
    presentation_image, random_splitting_input, build_splitting_ideal, FinitePresentation, Generator, Point,
    Provenance, DEFAULT_BUDGET,
};

/// Points of `fd^arity`, deduplicated and sorted by enumeration index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    field: FieldDescriptor,
    arity: usize,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(field: &FieldDescriptor, arity: usize, points: Vec<Point>) -> Result<Self> {
        let mut keyed = Vec::with_capacity(points.len());
        for p in points {
            if p.len() != arity {
                return Err(Error::ArityMismatch { expected: arity, actual: p.len() });
            }
            let key = p.iter().map(FieldElement::index).collect::<Result<Vec<_>>>()?;
            keyed.push((key, p));
        }
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        Ok(PointSet { field: field.clone(), arity, points: keyed.into_iter().map(|(_, p)| p).collect() })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &[FieldElement]) -> bool {
        self.points.iter().any(|q| q.as_slice() == p)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.points.iter().all(|p| other.contains(p))
    }
}

fn require_finite(fd: &FieldDescriptor) -> Result<u128> {
    fd.cardinality().ok_or(Error::InfiniteField)
}

/// `ℙ^n(fd)`, one representative per line with first nonzero coordinate 1.
pub fn enumerate_projective(fd: &FieldDescriptor, n: usize) -> Result<PointSet> {
    let q = require_finite(fd)?;
    let needed = q.checked_pow(n as u32 + 1).unwrap_or(u128::MAX);
    if needed > DEFAULT_BUDGET {
        return Err(Error::ExplosionGuard { needed, budget: DEFAULT_BUDGET });
    }
    let elems = fd.enumerate()?;
    let mut points = Vec::new();
    for lead in 0..=n {
        for tail in cartesian(&elems, n - lead) {
            let mut p = vec![fd.zero(); lead];
            p.push(fd.one());
            p.extend(tail);
            points.push(p);
        }
    }
    PointSet::new(fd, n + 1, points)
}

/// `{ map(a) : a ∈ fd^k }`.
pub fn polymap_image(map: &PolyMap, fd: &FieldDescriptor) -> Result<PointSet> {
    polymap_image_with_budget(map, fd, DEFAULT_BUDGET)
}

pub fn polymap_image_with_budget(map: &PolyMap, fd: &FieldDescriptor, budget: u128) -> Result<PointSet> {
    let q = require_finite(fd)?;
    if map.field() != fd {
        return Err(Error::DescriptorMismatch(format!("map over {}, points over {fd}", map.field())));
    }
    let k = map.inputs().len();
    let needed = q.checked_pow(k as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::ExplosionGuard { needed, budget });
    }
    let elems = fd.enumerate()?;
    let mut seen = BTreeSet::new();
    let mut points = Vec::new();
    for a in cartesian(&elems, k) {
        let v = map.eval(&a)?;
        let key = v.iter().map(FieldElement::index).collect::<Result<Vec<_>>>()?;
        if seen.insert(key) {
            points.push(v);
        }
    }
    PointSet::new(fd, map.outputs().len(), points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurjectivityReport {
    pub field_size: u128,
    pub image_size: usize,
    pub complement: Vec<FieldElement>,
    /// `0 < |complement| < q`.
    pub cofinite_proper: bool,
}

impl SurjectivityReport {
    pub fn complement_size(&self) -> usize {
        self.complement.len()
    }
}

/// Image and complement of a one-variable map `fd → fd`.
pub fn surjectivity_scan(map: &PolyMap, fd: &FieldDescriptor) -> Result<SurjectivityReport> {
    let q = require_finite(fd)?;
    if map.inputs().len() != 1 || map.outputs().len() != 1 {
        return Err(Error::NotUnivariate(format!("{} inputs, {} outputs", map.inputs().len(), map.outputs().len())));
    }
    let image = polymap_image(map, fd)?;
    let complement: Vec<FieldElement> =
        fd.enumerate()?.into_iter().filter(|x| !image.contains(core::slice::from_ref(x))).collect();
    let c = complement.len() as u128;
    Ok(SurjectivityReport { field_size: q, image_size: image.len(), cofinite_proper: c > 0 && c < q, complement })
}

fn fresh_name(taken: &BTreeSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    (2..).map(|i| format!("{base}_{i}")).find(|n| !taken.contains(n)).expect("unbounded")
}

/// `P2` with fiber variables renamed away from everything in `P1`.
fn separated(p1: &FinitePresentation, p2: &FinitePresentation) -> Result<(Vec<String>, Vec<Generator>)> {
    if p1.field != p2.field {
        return Err(Error::BaseMismatch(format!("fields {} and {}", p1.field, p2.field)));
    }
    if p1.base_vars != p2.base_vars {
        return Err(Error::BaseMismatch(format!("base {:?} and {:?}", p1.base_vars, p2.base_vars)));
    }
    let mut taken: BTreeSet<String> = p1.vars().into_iter().collect();
    let mut renames = Vec::new();
    let mut fibers = Vec::new();
    for v in &p2.fiber_vars {
        let n = fresh_name(&taken, v);
        taken.insert(n.clone());
        if &n != v {
            renames.push((v.clone(), n.clone()));
        }
        fibers.push(n);
    }
    let gens = p2.generators.iter().map(|g| g.rename_vars(&renames)).collect();
    Ok((fibers, gens))
}

/// Fiber product over the shared base: image is the intersection of images.
pub fn presentation_product(p1: &FinitePresentation, p2: &FinitePresentation) -> Result<FinitePresentation> {
    let (fib2, gens2) = separated(p1, p2)?;
    let mut fibers = p1.fiber_vars.clone();
    fibers.extend(fib2);
    let mut gens = p1.generators.clone();
    gens.extend(gens2);
    FinitePresentation::from_parts(&p1.field, p1.base_vars.clone(), fibers, gens, Provenance::Product)
}

/// Selector encoding `s(s−1), s·P1, (1−s)·P2`: image is the union of images.
pub fn presentation_disjoint_union(p1: &FinitePresentation, p2: &FinitePresentation) -> Result<FinitePresentation> {
    let (fib2, gens2) = separated(p1, p2)?;
    let mut fibers = p1.fiber_vars.clone();
    fibers.extend(fib2);
    let taken: BTreeSet<String> = p1.base_vars.iter().chain(&fibers).cloned().collect();
    let sel = fresh_name(&taken, "s");
    fibers.push(sel.clone());
    let mut vars = p1.base_vars.clone();
    vars.extend(fibers.iter().cloned());
    let fd = &p1.field;
    let s = MultiPoly::var(fd, &vars, &sel)?;
    let one = MultiPoly::one(fd, &vars);
    let not_s = one.checked_sub(&s)?;
    let mut gens = vec![Generator::Poly(s.checked_mul(&s.checked_sub(&one)?)?)];
    for g in &p1.generators {
        gens.push(g.with_vars(&vars)?.scaled_by(&s)?);
    }
    for g in &gens2 {
        gens.push(g.with_vars(&vars)?.scaled_by(&not_s)?);
    }
    FinitePresentation::from_parts(fd, p1.base_vars.clone(), fibers, gens, Provenance::DisjointUnion)
}

/// A small catalog of one-dimensional presentation pairs over `𝔽_3`.
pub fn closure_catalog() -> Result<Vec<(FinitePresentation, FinitePresentation)>> {
    let f3 = FieldDescriptor::prime(3)?;
    let vars = ["y", "z"];
    let y = MultiPoly::var(&f3, &vars, "y")?;
    let z = MultiPoly::var(&f3, &vars, "z")?;
    let c = |k: i64| MultiPoly::constant(&f3, &vars, f3.from_i64(k));
    let pres = |gens: Vec<MultiPoly>| FinitePresentation::new(&f3, &["y"], &["z"], gens);
    let squares = pres(vec![&z.pow(2) - &y])?;
    let shifted = pres(vec![&(&z.pow(2) - &y) - &c(1)])?;
    let units = pres(vec![&(&y * &z) - &c(1)])?;
    let zero_one = pres(vec![&y.pow(2) - &y])?;
    let everything = pres(vec![])?;
    let nothing = pres(vec![c(1)])?;
    let zero = pres(vec![&y * &z, &z - &c(1)])?;
    let cubes = pres(vec![&z.pow(3) - &y])?;
    let split1 = build_splitting_ideal(&random_splitting_input(3, 2, 1, 1, 5)?)?;
    let split2 = build_splitting_ideal(&random_splitting_input(3, 2, 1, 1, 11)?)?;
    Ok(vec![
        (squares.clone(), shifted.clone()),
        (squares.clone(), units.clone()),
        (units.clone(), zero_one.clone()),
        (zero_one, shifted.clone()),
        (squares.clone(), everything.clone()),
        (nothing.clone(), units),
        (zero, squares.clone()),
        (cubes, nothing),
        (split1.clone(), squares),
        (split1, split2),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCheck {
    pub index: usize,
    pub product_ok: bool,
    pub union_ok: bool,
    /// First base point where a law fails.
    pub witness: Option<Point>,
}

/// Image laws for each pair: `product = ∩`, `disjoint union = ∪`, exhaustively.
pub fn check_closure_laws(
    catalog: &[(FinitePresentation, FinitePresentation)],
    fd: &FieldDescriptor,
) -> Result<Vec<ClosureCheck>> {
    let mut out = Vec::new();
    for (index, (p1, p2)) in catalog.iter().enumerate() {
        let n = p1.base_vars.len();
        let i1 = PointSet::new(fd, n, presentation_image(p1, fd)?)?;
        let i2 = PointSet::new(fd, n, presentation_image(p2, fd)?)?;
        let ip = PointSet::new(fd, n, presentation_image(&presentation_product(p1, p2)?, fd)?)?;
        let iu = PointSet::new(fd, n, presentation_image(&presentation_disjoint_union(p1, p2)?, fd)?)?;
        let mut witness = None;
        let (mut product_ok, mut union_ok) = (true, true);
        for b in crate::splitdetect::grid(fd, n)? {
            let (a1, a2) = (i1.contains(&b), i2.contains(&b));
            let p_bad = ip.contains(&b) != (a1 && a2);
            let u_bad = iu.contains(&b) != (a1 || a2);
            product_ok &= !p_bad;
            union_ok &= !u_bad;
            if (p_bad || u_bad) && witness.is_none() {
                witness = Some(b);
            }
        }
        out.push(ClosureCheck { index, product_ok, union_ok, witness });
    }
    Ok(out)
}

/// Coordinates `(t; x : y : z : w)`.
pub const COUNTEREXAMPLE_VARS: [&str; 5] = ["t", "x", "y", "z", "w"];

/// The pencil `yw = x² − βw²`, `z² = βy² + tw²` over `𝔸¹ × ℙ³`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleVariety {
    field: FieldDescriptor,
    beta: FieldElement,
    forms: [MultiPoly; 2],
}

impl CounterexampleVariety {
    pub fn new(fd: &FieldDescriptor, beta: FieldElement) -> Result<Self> {
        require_finite(fd)?;
        if fd.characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if beta.field() != fd {
            return Err(Error::DescriptorMismatch(format!("beta over {}", beta.field())));
        }
        if beta.is_zero() || beta.is_square_by_search()? {
            return Err(Error::BetaIsSquare);
        }
        let v = |n: &str| MultiPoly::var(fd, &COUNTEREXAMPLE_VARS, n).expect("known variable");
        let (t, x, y, z, w) = (v("t"), v("x"), v("y"), v("z"), v("w"));
        let bw2 = w.pow(2).scale(&beta);
        let first = &(&(&y * &w) - &x.pow(2)) + &bw2;
        let second = &(&z.pow(2) - &y.pow(2).scale(&beta)) - &(&t * &w.pow(2));
        Ok(CounterexampleVariety { field: fd.clone(), beta, forms: [first, second] })
    }

    /// The first non-square in enumeration order.
    pub fn with_first_nonsquare(fd: &FieldDescriptor) -> Result<Self> {
        if fd.characteristic() == 2 {
            return Err(Error::CharacteristicTwo);
        }
        for b in fd.enumerate()? {
            if !b.is_zero() && !b.is_square_by_search()? {
                return CounterexampleVariety::new(fd, b);
            }
        }
        Err(Error::BetaIsSquare)
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn beta(&self) -> &FieldElement {
        &self.beta
    }

    /// `yw − x² + βw²` and `z² − βy² − tw²` in [`COUNTEREXAMPLE_VARS`].
    pub fn forms(&self) -> &[MultiPoly; 2] {
        &self.forms
    }

    pub fn satisfied_at(&self, alpha: &FieldElement, xyzw: &[FieldElement]) -> Result<bool> {
        let mut pt = vec![alpha.clone()];
        pt.extend(xyzw.iter().cloned());
        Ok(self.forms[0].eval(&pt)?.is_zero() && self.forms[1].eval(&pt)?.is_zero())
    }
}

/// `V_α(𝔽_q) ⊆ ℙ³(𝔽_q)`.
pub fn counterexample_fiber(cv: &CounterexampleVariety, alpha: &FieldElement) -> Result<PointSet> {
    let proj = enumerate_projective(&cv.field, 3)?;
    let mut points = Vec::new();
    for p in proj.points() {
        if cv.satisfied_at(alpha, p)? {
            points.push(p.clone());
        }
    }
    PointSet::new(&cv.field, 4, points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberCensus {
    pub q: u128,
    pub nonempty: usize,
    pub total: usize,
    pub zero_fiber_size: usize,
}

/// Counts nonempty fibers over all `α ∈ 𝔽_q`. Reported, not asserted.
pub fn fiber_census(cv: &CounterexampleVariety) -> Result<FiberCensus> {
    let q = require_finite(&cv.field)?;
    let mut nonempty = 0;
    let mut zero_fiber_size = 0;
    let elems = cv.field.enumerate()?;
    for a in &elems {
        let fib = counterexample_fiber(cv, a)?;
        if a.is_zero() {
            zero_fiber_size = fib.len();
        }
        if !fib.is_empty() {
            nonempty += 1;
        }
    }
    Ok(FiberCensus { q, nonempty, total: elems.len(), zero_fiber_size })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubCheck {
    pub id: String,
    pub passed: bool,
    /// A complete proof rather than a bounded search.
    pub exact: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticReport {
    pub bound: usize,
    pub seed: u64,
    pub checks: Vec<SubCheck>,
}

impl QuinticReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Number of separability samples in [`check_quintic_example`].
pub const QUINTIC_SAMPLES: usize = 20;

/// `𝔽_4(t)` with `𝔽_4 = 𝔽_2[u]/(u² + u + 1)`.
pub fn f4t() -> Result<FieldDescriptor> {
    FieldDescriptor::function_field(&FieldDescriptor::finite(2, 2, "u")?, "t")
}

fn t_poly(k: &FieldDescriptor, coeffs: Vec<FieldElement>) -> Result<FieldElement> {
    let c = &k.function_data().expect("function field").coeff;
    k.fraction(coeffs, vec![c.one()])
}

/// `t`-adic valuation of a nonzero function-field element.
pub fn t_valuation(a: &FieldElement) -> Option<i64> {
    let (num, den) = a.fraction_parts()?;
    let low = |v: &[FieldElement]| v.iter().position(|c| !c.is_zero());
    Some(low(num)? as i64 - low(den)? as i64)
}

/// For `x^n + c` with `n ≥ 2`: a root `a` gives `n·v_t(a) = v_t(c)`, so
/// `v_t(c) ≢ 0 (mod n)` proves there is none.
pub fn binomial_valuation_proof(f: &MultiPoly, var: &str) -> Result<Option<String>> {
    let dense = f.to_dense(var)?;
    let n = dense.len().saturating_sub(1);
    if n < 2 || !dense[n].is_one() || dense[1..n].iter().any(|c| !c.is_zero()) || dense[0].is_zero() {
        return Ok(None);
    }
    let Some(v) = t_valuation(&dense[0]) else { return Ok(None) };
    Ok((v.rem_euclid(n as i64) != 0).then(|| format!("v_t(constant) = {v} is not divisible by {n}")))
}

/// Roots `a/b` of `f ∈ 𝔽_q(t)[x]` with `deg a, deg b ≤ bound`, by clearing
/// denominators and testing every candidate allowed by the rational root
/// theorem over `𝔽_q[t]`: `a | f_0`, `b | f_n`.
pub fn bounded_roots(f: &MultiPoly, var: &str, bound: usize) -> Result<Vec<FieldElement>> {
    let k = f.field();
    let Some(func) = k.function_data() else {
        return Err(Error::DescriptorMismatch(format!("bounded root search needs a function field, got {k}")));
    };
    let c = func.coeff.clone();
    let coeffs = f.to_dense(var)?;
    if coeffs.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    // clear denominators
    let mut lcm = vec![c.one()];
    for a in &coeffs {
        let (_, den) = a.fraction_parts().expect("function field element");
        let g = dense::gcd(&c, &lcm, den);
        lcm = dense::divrem(&c, &dense::mul(&c, &lcm, den), &g).0;
    }
    let l = k.fraction(lcm, vec![c.one()])?;
    let ints: Vec<Vec<FieldElement>> = coeffs
        .iter()
        .map(|a| {
            let p = a * &l;
            let (num, den) = p.fraction_parts().expect("function field element");
            debug_assert!(den.len() == 1);
            dense::trimmed(num.to_vec())
        })
        .collect();
    let mut roots = Vec::new();
    let low = ints.iter().position(|p| !p.is_empty()).expect("nonzero polynomial");
    if low > 0 {
        roots.push(k.zero());
    }
    let lead = ints.last().expect("nonempty");
    let elems = c.enumerate()?;
    let divisors = |p: &[FieldElement]| -> Vec<Vec<FieldElement>> {
        let dmax = dense::degree(p).unwrap_or(0).min(bound);
        let mut out = Vec::new();
        for d in 0..=dmax {
            for tail in cartesian(&elems, d) {
                let mut m = tail;
                m.push(c.one());
                if dense::rem(&c, p, &m).is_empty() {
                    out.push(m);
                }
            }
        }
        out
    };
    let units: Vec<FieldElement> = elems.iter().filter(|e| !e.is_zero()).cloned().collect();
    for a in divisors(&ints[low]) {
        for b in divisors(lead) {
            for u in &units {
                let cand = k.fraction(dense::scale(&a, u), b.clone())?;
                if dense::eval(&coeffs, &cand).is_zero() && !roots.contains(&cand) {
                    roots.push(cand);
                }
            }
        }
    }
    Ok(roots)
}

/// The quintic `(x² + t)(x³ + t)` over `𝔽_4(t)`.
pub fn quintic(k: &FieldDescriptor) -> Result<MultiPoly> {
    let (a, b) = quintic_factors(k)?;
    a.checked_mul(&b)
}

fn quintic_factors(k: &FieldDescriptor) -> Result<(MultiPoly, MultiPoly)> {
    let c = &k.function_data().ok_or(Error::InfiniteField)?.coeff;
    let t = MultiPoly::constant(k, &["x"], t_poly(k, vec![c.zero(), c.one()])?);
    let x = MultiPoly::var(k, &["x"], "x")?;
    Ok((&x.pow(2) + &t, &x.pow(3) + &t))
}

/// The verifiable sub-claims about the quintic over `𝔽_4(t)`.
pub fn check_quintic_example(bound: usize, seed: u64) -> Result<QuinticReport> {
    if bound < 3 {
        return Err(Error::BoundExceeded(format!("degree bound {bound} is below 3")));
    }
    let k = f4t()?;
    let c = k.function_data().expect("function field").coeff.clone();
    let (fa, fb) = quintic_factors(&k)?;
    let f = fa.checked_mul(&fb)?;
    let x = MultiPoly::var(&k, &["x"], "x")?;
    let t = t_poly(&k, vec![c.zero(), c.one()])?;
    let t2 = &t * &t;
    let mut checks = Vec::new();

    let fprime = f.derivative("x");
    let expected = x.pow(2).checked_mul(&fa)?;
    checks.push(SubCheck {
        id: "derivative".into(),
        passed: fprime == expected,
        exact: true,
        detail: format!("f' = {fprime}"),
    });

    let f0 = f.eval(&[k.zero()])?;
    checks.push(SubCheck { id: "value-at-zero".into(), passed: f0 == t2, exact: true, detail: format!("f(0) = {f0}") });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut drawn = 0;
    while drawn < QUINTIC_SAMPLES {
        let deg = rng.gen_range(0..=bound);
        let coeffs: Vec<FieldElement> = (0..=deg).map(|_| c.random_element(&mut rng)).collect();
        let cc = t_poly(&k, coeffs)?;
        if cc.is_zero() || cc == t2 {
            continue;
        }
        drawn += 1;
        let shifted = f.checked_add(&MultiPoly::constant(&k, &["x"], cc.clone()))?;
        let g = gcd_univariate(&shifted, &fprime, "x")?;
        if !g.is_constant() {
            failures.push(format!("c = {cc}: gcd = {g}"));
        }
    }
    checks.push(SubCheck {
        id: "separability".into(),
        passed: failures.is_empty(),
        exact: true,
        detail: if failures.is_empty() {
            format!("gcd(f + c, f') = 1 for {QUINTIC_SAMPLES} random c")
        } else {
            failures.join("; ")
        },
    });

    for (name, factor) in [("x^2+t", &fa), ("x^3+t", &fb)] {
        let proof = binomial_valuation_proof(factor, "x")?;
        checks.push(SubCheck {
            id: format!("rootless-{name}"),
            passed: proof.is_some(),
            exact: true,
            detail: proof.unwrap_or_else(|| "no valuation argument applies".into()),
        });
        let roots = bounded_roots(factor, "x", bound)?;
        checks.push(SubCheck {
            id: format!("height-search-{name}"),
            passed: roots.is_empty(),
            exact: false,
            detail: if roots.is_empty() {
                format!("no roots a/b with deg a, deg b <= {bound}")
            } else {
                format!("roots found: {}", roots.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            },
        });
    }
    Ok(QuinticReport { bound, seed, checks })
}

#[cfg(test)]
mod tests;
