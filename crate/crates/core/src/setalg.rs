//! Positive combinations of basic sets `{f ≠ 0}`, `{f = 0}`, `{f > 0}`,
//! `{f ≥ 0}`, `{f ∈ P_n}`, `{f ∈ R_n}` over algebraically, real or
//! p-adically closed contexts, evaluated at exact points.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldKind};
use crate::poly::qpoly::{self, QPoly};
use crate::poly::MultiPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Ne0,
    Eq0,
    Gt0,
    Ge0,
    /// Nonzero `n`-th power.
    InP(u32),
    /// `n`-th power, zero included.
    InR(u32),
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Relation::Ne0 => f.write_str("!=0"),
            Relation::Eq0 => f.write_str("=0"),
            Relation::Gt0 => f.write_str(">0"),
            Relation::Ge0 => f.write_str(">=0"),
            Relation::InP(n) => write!(f, "inP({n})"),
            Relation::InR(n) => write!(f, "inR({n})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub poly: MultiPoly,
    pub relation: Relation,
}

impl Atom {
    pub fn new(poly: MultiPoly, relation: Relation) -> Self {
        Atom { poly, relation }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.relation {
            Relation::InP(_) | Relation::InR(_) => write!(f, "({}) {}", self.poly, self.relation),
            _ => write!(f, "{} {}", self.poly, self.relation),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Context {
    Acf,
    Rcf,
    Padic(u64),
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Acf => f.write_str("ACF"),
            Context::Rcf => f.write_str("RCF"),
            Context::Padic(p) => write!(f, "PADIC({p})"),
        }
    }
}

impl Context {
    fn allows(&self, r: Relation) -> bool {
        match self {
            Context::Acf => matches!(r, Relation::Ne0 | Relation::Eq0),
            Context::Rcf => true,
            Context::Padic(_) => !matches!(r, Relation::Gt0 | Relation::Ge0),
        }
    }
}

/// A finite union (outer list) of finite intersections (inner lists) of atoms.
/// The empty union is `∅` (printed `empty`); an empty clause is everything.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveCombination {
    context: Context,
    vars: Vec<String>,
    clauses: Vec<Vec<Atom>>,
}

impl PositiveCombination {
    /// Validates every atom against the context and reindexes it onto `vars`.
    pub fn new<S: AsRef<str>>(context: Context, vars: &[S], clauses: Vec<Vec<Atom>>) -> Result<Self> {
        if let Context::Padic(p) = context {
            if !arith::is_prime(p) {
                return Err(Error::ContextMismatch(format!("{p} is not prime")));
            }
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let clauses = clauses
            .into_iter()
            .map(|clause| clause.into_iter().map(|a| check_atom(context, &vars, a)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Ok(PositiveCombination { context, vars, clauses })
    }

    pub fn empty<S: AsRef<str>>(context: Context, vars: &[S]) -> Self {
        PositiveCombination::new(context, vars, Vec::new()).expect("no atoms to check")
    }

    pub fn everything<S: AsRef<str>>(context: Context, vars: &[S]) -> Self {
        PositiveCombination::new(context, vars, vec![Vec::new()]).expect("no atoms to check")
    }

    pub fn atom<S: AsRef<str>>(context: Context, vars: &[S], atom: Atom) -> Result<Self> {
        PositiveCombination::new(context, vars, vec![vec![atom]])
    }

    pub fn context(&self) -> Context {
        self.context
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn clauses(&self) -> &[Vec<Atom>] {
        &self.clauses
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.context != other.context {
            return Err(Error::ContextMismatch(format!("{} vs {}", self.context, other.context)));
        }
        if self.vars != other.vars {
            return Err(Error::ContextMismatch("different variable lists".into()));
        }
        Ok(())
    }
}

impl fmt::Display for PositiveCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("empty");
        }
        for (i, clause) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let atoms: Vec<String> = clause.iter().map(|a| a.to_string()).collect();
            write!(f, "[{}]", atoms.join(", "))?;
        }
        Ok(())
    }
}

fn check_atom(context: Context, vars: &[String], atom: Atom) -> Result<Atom> {
    if !context.allows(atom.relation) {
        return Err(Error::ContextMismatch(format!("{} is not allowed in {context}", atom.relation)));
    }
    if let Relation::InP(0) | Relation::InR(0) = atom.relation {
        return Err(Error::ContextMismatch("power index must be positive".into()));
    }
    if context != Context::Acf && !matches!(atom.poly.field().kind(), FieldKind::Rationals) {
        return Err(Error::ContextMismatch(format!("{context} atoms need rational coefficients")));
    }
    Ok(Atom { poly: atom.poly.with_vars(vars)?, relation: atom.relation })
}

/// Concatenate the clause lists.
pub fn union(a: &PositiveCombination, b: &PositiveCombination) -> Result<PositiveCombination> {
    a.compatible(b)?;
    let mut clauses = a.clauses.clone();
    clauses.extend(b.clauses.iter().cloned());
    Ok(PositiveCombination { context: a.context, vars: a.vars.clone(), clauses })
}

/// Distribute: one clause per pair of clauses.
pub fn intersect(a: &PositiveCombination, b: &PositiveCombination) -> Result<PositiveCombination> {
    a.compatible(b)?;
    let mut clauses = Vec::with_capacity(a.clauses.len() * b.clauses.len());
    for ca in &a.clauses {
        for cb in &b.clauses {
            let mut c = ca.clone();
            c.extend(cb.iter().cloned());
            clauses.push(c);
        }
    }
    Ok(PositiveCombination { context: a.context, vars: a.vars.clone(), clauses })
}

/// Exact membership of a point (over ℚ outside the ACF context).
pub fn membership(pc: &PositiveCombination, point: &[FieldElement]) -> Result<bool> {
    if point.len() != pc.vars.len() {
        return Err(Error::ArityMismatch { expected: pc.vars.len(), actual: point.len() });
    }
    for clause in &pc.clauses {
        let mut all = true;
        for atom in clause {
            if !atom_holds(pc.context, atom, point)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(true);
        }
    }
    Ok(false)
}

fn atom_holds(context: Context, atom: &Atom, point: &[FieldElement]) -> Result<bool> {
    let v = atom.poly.eval(point).map_err(|e| match e {
        Error::DescriptorMismatch(s) => Error::ContextMismatch(s),
        other => other,
    })?;
    let rational = || v.as_rational().cloned().ok_or_else(|| Error::ContextMismatch(format!("{v} is not rational")));
    Ok(match (atom.relation, context) {
        (Relation::Ne0, _) => !v.is_zero(),
        (Relation::Eq0, _) => v.is_zero(),
        (Relation::Gt0, _) => rational()?.is_positive(),
        (Relation::Ge0, _) => !rational()?.is_negative(),
        (Relation::InP(n), Context::Rcf) => {
            let q = rational()?;
            if n % 2 == 0 { q.is_positive() } else { !q.is_zero() }
        }
        (Relation::InR(n), Context::Rcf) => n % 2 == 1 || !rational()?.is_negative(),
        (Relation::InP(n), Context::Padic(p)) => {
            let q = rational()?;
            !q.is_zero() && is_nth_power_in_qp(&q, n, p)?
        }
        (Relation::InR(n), Context::Padic(p)) => {
            let q = rational()?;
            q.is_zero() || is_nth_power_in_qp(&q, n, p)?
        }
        (r, c) => return Err(Error::ContextMismatch(format!("{r} is not allowed in {c}"))),
    })
}

/// Largest modulus searched exhaustively for wild roots.
const SEARCH_LIMIT: u64 = 100_000_000;

/// `(v_p(a), a / p^{v} mod p^k)` for nonzero rational `a`.
pub fn unit_part_mod(a: &BigRational, p: u64, k: u32) -> (i64, u64) {
    let vn = arith::valuation(a.numer(), p) as i64;
    let vd = arith::valuation(a.denom(), p) as i64;
    let pk = p.pow(k);
    let pb = BigInt::from(p);
    let num = a.numer() / num_traits::pow(pb.clone(), vn as usize);
    let den = a.denom() / num_traits::pow(pb, vd as usize);
    let n = arith::bigint_mod(&num, pk);
    let d = arith::bigint_mod(&den, pk);
    let u = arith::mul_mod(n, arith::inv_mod(d, pk).expect("unit denominator"), pk);
    (vn - vd, u)
}

/// Is the nonzero rational `a` an `n`-th power in `ℚ_p`?
///
/// With `a = p^v u`, `u` a unit: `n | v` and `x^n ≡ u (mod p^{2e+1})` is
/// solvable, `e = v_p(n)`; Hensel lifts any such solution. For `e = 0` this
/// is Euler's criterion modulo `p`.
pub fn is_nth_power_in_qp(a: &BigRational, n: u32, p: u64) -> Result<bool> {
    if a.is_zero() {
        return Err(Error::ZeroInput);
    }
    if !arith::is_prime(p) {
        return Err(Error::ContextMismatch(format!("{p} is not prime")));
    }
    if n == 0 {
        return Err(Error::ContextMismatch("power index must be positive".into()));
    }
    let e = arith::valuation(&BigInt::from(n), p);
    let k = 2 * e + 1;
    let pk = p.checked_pow(k).filter(|&m| m <= SEARCH_LIMIT || e == 0);
    let Some(pk) = pk else {
        return Err(Error::BoundExceeded(format!("{p}^{k} residues")));
    };
    let (v, u) = unit_part_mod(a, p, k);
    if v.rem_euclid(n as i64) != 0 {
        return Ok(false);
    }
    if e == 0 {
        let g = arith::gcd_u64(n as u64, p - 1);
        return Ok(arith::pow_mod(u, (p - 1) / g, p) == 1);
    }
    Ok((1..pk).filter(|x| x % p != 0).any(|x| arith::pow_mod(x, n as u64, pk) == u))
}

/// A real algebraic number: a rational, or the unique root of a squarefree
/// rational polynomial in the open interval `(lo, hi)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RealPoint {
    Rational(BigRational),
    Algebraic { poly: QPoly, lo: BigRational, hi: BigRational },
}

impl RealPoint {
    /// Order of this point relative to the rational `x`.
    pub fn cmp_rational(&self, x: &BigRational) -> Ordering {
        match self {
            RealPoint::Rational(r) => r.cmp(x),
            RealPoint::Algebraic { poly, lo, hi } => {
                if x <= lo {
                    Ordering::Greater
                } else if x >= hi {
                    Ordering::Less
                } else {
                    let sx = qpoly::sign(&qpoly::eval(poly, x));
                    if sx == 0 {
                        Ordering::Equal
                    } else if sx == qpoly::sign(&qpoly::eval(poly, lo)) {
                        // x lies between lo and the root
                        Ordering::Greater
                    } else {
                        Ordering::Less
                    }
                }
            }
        }
    }
}

impl fmt::Display for RealPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPoint::Rational(r) => write!(f, "{r}"),
            RealPoint::Algebraic { poly, lo, hi } => {
                let q = crate::field::FieldDescriptor::rationals();
                let dense: Vec<FieldElement> = poly.iter().map(|c| q.from_rational(c).expect("ℚ")).collect();
                write!(f, "root of {} in ({lo}, {hi})", crate::field::dense_to_string(&dense, "x"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Endpoint {
    NegInf,
    PosInf,
    Open(RealPoint),
    Closed(RealPoint),
}

/// A maximal interval of the described set; a single point is `[r, r]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealInterval {
    pub lower: Endpoint,
    pub upper: Endpoint,
}

impl RealInterval {
    pub fn contains(&self, x: &BigRational) -> bool {
        let above = match &self.lower {
            Endpoint::NegInf => true,
            Endpoint::PosInf => false,
            Endpoint::Open(r) => r.cmp_rational(x) == Ordering::Less,
            Endpoint::Closed(r) => r.cmp_rational(x) != Ordering::Greater,
        };
        let below = match &self.upper {
            Endpoint::PosInf => true,
            Endpoint::NegInf => false,
            Endpoint::Open(r) => r.cmp_rational(x) == Ordering::Greater,
            Endpoint::Closed(r) => r.cmp_rational(x) != Ordering::Less,
        };
        above && below
    }
}

impl fmt::Display for RealInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.lower {
            Endpoint::NegInf => f.write_str("(-inf")?,
            Endpoint::Open(r) => write!(f, "({r}")?,
            Endpoint::Closed(r) => write!(f, "[{r}")?,
            Endpoint::PosInf => f.write_str("(+inf")?,
        }
        f.write_str(", ")?;
        match &self.upper {
            Endpoint::PosInf => f.write_str("+inf)"),
            Endpoint::Open(r) => write!(f, "{r})"),
            Endpoint::Closed(r) => write!(f, "{r}]"),
            Endpoint::NegInf => f.write_str("-inf)"),
        }
    }
}

struct RootCell {
    point: RealPoint,
    lo: BigRational,
    hi: BigRational,
}

/// Maximal intervals of a one-variable RCF combination, in increasing order.
///
/// All atom polynomials' roots are isolated together; each open cell is
/// decided at a rational sample point, and each root `r` (isolated in
/// `(lo, hi)`) is decided per atom: `f(r) = 0` iff `gcd(f, S)` has a root in
/// `(lo, hi)`, otherwise `f` has no root in `[lo, hi]` and `sign f(r) = sign f(lo)`.
pub fn describe_univariate_rcf(pc: &PositiveCombination) -> Result<Vec<RealInterval>> {
    if pc.context != Context::Rcf {
        return Err(Error::ContextMismatch(format!("interval description needs RCF, got {}", pc.context)));
    }
    if pc.vars.len() != 1 {
        return Err(Error::ContextMismatch("interval description needs exactly one variable".into()));
    }
    let var = pc.vars[0].clone();
    let mut polys: Vec<QPoly> = Vec::new();
    for atom in pc.clauses.iter().flatten() {
        let dense = atom.poly.to_dense(&var)?;
        polys.push(dense.iter().map(|c| c.as_rational().expect("ℚ").clone()).collect());
    }
    let mut s: QPoly = vec![BigRational::one()];
    for p in &polys {
        if p.len() > 1 {
            s = qpoly::mul(&s, &qpoly::squarefree_part(p));
        }
    }
    let s = qpoly::squarefree_part(&s);
    let rational_roots = if s.len() > 1 { qpoly::rational_roots(&s).unwrap_or_default() } else { Vec::new() };
    let roots: Vec<RootCell> = if s.len() > 1 { qpoly::isolate(&s)? } else { Vec::new() }
        .into_iter()
        .map(|(lo, hi)| {
            let point = match rational_roots.iter().find(|r| &lo < *r && *r < &hi) {
                Some(r) => RealPoint::Rational(r.clone()),
                None => RealPoint::Algebraic { poly: s.clone(), lo: lo.clone(), hi: hi.clone() },
            };
            RootCell { point, lo, hi }
        })
        .collect();

    let eval_at = |signs: &dyn Fn(&QPoly) -> i8| -> bool {
        pc.clauses.iter().any(|clause| {
            clause.iter().all(|atom| {
                let dense: QPoly = atom
                    .poly
                    .to_dense(&var)
                    .expect("univariate")
                    .iter()
                    .map(|c| c.as_rational().expect("ℚ").clone())
                    .collect();
                let sg = signs(&dense);
                match atom.relation {
                    Relation::Ne0 => sg != 0,
                    Relation::Eq0 => sg == 0,
                    Relation::Gt0 => sg > 0,
                    Relation::Ge0 => sg >= 0,
                    // real n-th powers: positive reals for even n, all reals for odd n
                    Relation::InP(n) => if n % 2 == 0 { sg > 0 } else { sg != 0 },
                    Relation::InR(n) => n % 2 == 1 || sg >= 0,
                }
            })
        })
    };

    // cells: open(0), point(1), open(1), ..., point(k), open(k)
    let k = roots.len();
    let mut truth: Vec<bool> = Vec::with_capacity(2 * k + 1);
    let open_sample = |i: usize| -> BigRational {
        if k == 0 {
            BigRational::zero()
        } else if i == 0 {
            roots[0].lo.clone()
        } else {
            roots[i - 1].hi.clone()
        }
    };
    let s0 = open_sample(0);
    truth.push(eval_at(&|f: &QPoly| qpoly::sign(&qpoly::eval(f, &s0))));
    for (i, root) in roots.iter().enumerate() {
        let at_root = |f: &QPoly| -> i8 {
            if f.len() <= 1 {
                return f.first().map_or(0, qpoly::sign);
            }
            let g = qpoly::gcd(f, &s);
            if g.len() > 1 && qpoly::count_roots(&qpoly::sturm_chain(&g), &root.lo, &root.hi) > 0 {
                0
            } else {
                qpoly::sign(&qpoly::eval(f, &root.lo))
            }
        };
        truth.push(eval_at(&at_root));
        let si = open_sample(i + 1);
        truth.push(eval_at(&|f: &QPoly| qpoly::sign(&qpoly::eval(f, &si))));
    }

    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for c in 0..=truth.len() {
        let on = c < truth.len() && truth[c];
        match (on, start) {
            (true, None) => start = Some(c),
            (false, Some(s0)) => {
                out.push(RealInterval { lower: lower_end(&roots, s0), upper: upper_end(&roots, c - 1, k) });
                start = None;
            }
            _ => {}
        }
    }
    Ok(out)
}

/// Cell index `c`: even = open cell `c/2`, odd = root `(c-1)/2`.
fn lower_end(roots: &[RootCell], c: usize) -> Endpoint {
    if c % 2 == 1 {
        Endpoint::Closed(roots[c / 2].point.clone())
    } else if c == 0 {
        Endpoint::NegInf
    } else {
        Endpoint::Open(roots[c / 2 - 1].point.clone())
    }
}

fn upper_end(roots: &[RootCell], c: usize, k: usize) -> Endpoint {
    if c % 2 == 1 {
        Endpoint::Closed(roots[c / 2].point.clone())
    } else if c / 2 == k {
        Endpoint::PosInf
    } else {
        Endpoint::Open(roots[c / 2].point.clone())
    }
}

/// Exhaustive check: is `u` an `n`-th power modulo `p^k` among units? Used as
/// an independent oracle with a larger modulus than the decision procedure.
pub fn nth_power_mod_search(u: u64, n: u32, p: u64, k: u32) -> bool {
    let pk = p.pow(k);
    (1..pk).filter(|x| x.gcd(&p) == 1).any(|x| arith::pow_mod(x, n as u64, pk) == u % pk)
}

/// Convert a rational to `f64` for display only.
pub fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldDescriptor;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldDescriptor {
        FieldDescriptor::rationals()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn xpoly(coeffs: &[i64]) -> MultiPoly {
        let q = q();
        let dense: Vec<FieldElement> = coeffs.iter().map(|&c| q.from_i64(c)).collect();
        MultiPoly::from_dense(&q, &["x"], "x", &dense).unwrap()
    }

    fn single(rel: Relation, coeffs: &[i64], ctx: Context) -> PositiveCombination {
        PositiveCombination::atom(ctx, &["x"], Atom::new(xpoly(coeffs), rel)).unwrap()
    }

    fn at(x: BigRational) -> Vec<FieldElement> {
        vec![q().from_rational(&x).unwrap()]
    }

    #[test]
    fn membership_examples() {
        let gt = single(Relation::Gt0, &[-2, 0, 1], Context::Rcf);
        assert!(membership(&gt, &at(rat(3, 2))).unwrap());
        let ge = single(Relation::Ge0, &[-2, 0, 1], Context::Rcf);
        assert!(!membership(&ge, &at(rat(1, 1))).unwrap());
        let p2 = single(Relation::InP(2), &[0, 1], Context::Padic(2));
        assert!(membership(&p2, &at(rat(17, 1))).unwrap());
        assert!(!membership(&p2, &at(rat(0, 1))).unwrap());
        let r2 = single(Relation::InR(2), &[0, 1], Context::Padic(2));
        assert!(membership(&r2, &at(rat(0, 1))).unwrap());
        assert_eq!(membership(&gt, &[]).unwrap_err(), Error::ArityMismatch { expected: 1, actual: 0 });
    }

    #[test]
    fn context_rules() {
        let atom = Atom::new(xpoly(&[0, 1]), Relation::Gt0);
        assert!(matches!(PositiveCombination::atom(Context::Acf, &["x"], atom.clone()), Err(Error::ContextMismatch(_))));
        assert!(matches!(PositiveCombination::atom(Context::Padic(3), &["x"], atom), Err(Error::ContextMismatch(_))));
        let a = single(Relation::Ne0, &[0, 1], Context::Rcf);
        let b = single(Relation::Ne0, &[0, 1], Context::Padic(3));
        assert!(matches!(union(&a, &b), Err(Error::ContextMismatch(_))));
        let f3 = FieldDescriptor::prime(3).unwrap();
        let acf = PositiveCombination::atom(
            Context::Acf,
            &["x"],
            Atom::new(MultiPoly::var(&f3, &["x"], "x").unwrap(), Relation::Eq0),
        )
        .unwrap();
        assert!(membership(&acf, &[f3.zero()]).unwrap());
        assert!(!membership(&acf, &[f3.one()]).unwrap());
    }

    #[test]
    fn qp_power_examples() {
        assert!(!is_nth_power_in_qp(&rat(2, 1), 2, 2).unwrap());
        assert!(is_nth_power_in_qp(&rat(17, 1), 2, 2).unwrap());
        assert!(nth_power_mod_search(17, 2, 2, 7));
        assert!(nth_power_mod_search(17, 2, 2, 3));
        assert!(is_nth_power_in_qp(&rat(7, 1), 3, 5).unwrap());
        assert!(!is_nth_power_in_qp(&rat(3, 1), 2, 2).unwrap());
        assert!(is_nth_power_in_qp(&rat(1, 4), 2, 2).unwrap());
        assert!(is_nth_power_in_qp(&rat(-7, 1), 2, 2).unwrap());
        assert_eq!(is_nth_power_in_qp(&rat(0, 1), 2, 2).unwrap_err(), Error::ZeroInput);
    }

    /// Brute-force oracle: `n | v` and `u` is an `n`-th power modulo `p^{2e+3}`.
    fn qp_oracle(a: &BigRational, n: u32, p: u64) -> bool {
        let e = arith::valuation(&BigInt::from(n), p);
        let k = 2 * e + 3;
        let (v, u) = unit_part_mod(a, p, k);
        v.rem_euclid(n as i64) == 0 && nth_power_mod_search(u, n, p, k)
    }

    #[test]
    fn qp_power_matches_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..300 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let n = rng.gen_range(2..=6u32);
            let mut num: i64 = rng.gen_range(-10_000..=10_000);
            if num == 0 {
                num = 1;
            }
            let den: i64 = rng.gen_range(1..=10_000);
            let a = rat(num, den);
            assert_eq!(is_nth_power_in_qp(&a, n, p).unwrap(), qp_oracle(&a, n, p), "a={a} n={n} p={p}");
        }
    }

    #[test]
    fn rcf_square_atom_is_positivity() {
        let p2 = single(Relation::InP(2), &[0, 1], Context::Rcf);
        let pos = single(Relation::Gt0, &[0, 1], Context::Rcf);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = rat(rng.gen_range(-50..=50), rng.gen_range(1..=9));
            assert_eq!(membership(&p2, &at(x.clone())).unwrap(), membership(&pos, &at(x)).unwrap());
        }
    }

    #[test]
    fn describe_examples() {
        let d = describe_univariate_rcf(&single(Relation::Ge0, &[-2, 0, 1], Context::Rcf)).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[0].lower, Endpoint::NegInf);
        assert_eq!(d[1].upper, Endpoint::PosInf);
        match (&d[0].upper, &d[1].lower) {
            (Endpoint::Closed(r1), Endpoint::Closed(r2)) => {
                assert_eq!(r1.cmp_rational(&rat(-2, 1)), Ordering::Greater);
                assert_eq!(r1.cmp_rational(&rat(-1, 1)), Ordering::Less);
                assert_eq!(r2.cmp_rational(&rat(1, 1)), Ordering::Greater);
                assert_eq!(r2.cmp_rational(&rat(2, 1)), Ordering::Less);
            }
            other => panic!("unexpected endpoints {other:?}"),
        }
        let all = describe_univariate_rcf(&single(Relation::Gt0, &[1], Context::Rcf)).unwrap();
        assert_eq!(all, vec![RealInterval { lower: Endpoint::NegInf, upper: Endpoint::PosInf }]);
        let ne = describe_univariate_rcf(&single(Relation::Ne0, &[0, 1], Context::Rcf)).unwrap();
        let zero = RealPoint::Rational(BigRational::zero());
        assert_eq!(
            ne,
            vec![
                RealInterval { lower: Endpoint::NegInf, upper: Endpoint::Open(zero.clone()) },
                RealInterval { lower: Endpoint::Open(zero), upper: Endpoint::PosInf },
            ]
        );
        assert!(describe_univariate_rcf(&PositiveCombination::empty(Context::Rcf, &["x"])).unwrap().is_empty());
    }

    fn random_atom(rng: &mut ChaCha8Rng, rels: &[Relation]) -> Atom {
        let deg = rng.gen_range(0..=3);
        let coeffs: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-4..=4)).collect();
        Atom::new(xpoly(&coeffs), rels[rng.gen_range(0..rels.len())])
    }

    fn random_pc(rng: &mut ChaCha8Rng, ctx: Context, rels: &[Relation]) -> PositiveCombination {
        let clauses = (0..rng.gen_range(0..=3))
            .map(|_| (0..rng.gen_range(0..=3)).map(|_| random_atom(rng, rels)).collect())
            .collect();
        PositiveCombination::new(ctx, &["x"], clauses).unwrap()
    }

    #[test]
    fn boolean_laws_and_description_agree_with_membership() {
        let rels = [
            Relation::Ne0,
            Relation::Eq0,
            Relation::Gt0,
            Relation::Ge0,
            Relation::InP(2),
            Relation::InP(3),
            Relation::InR(2),
            Relation::InR(3),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..60 {
            let a = random_pc(&mut rng, Context::Rcf, &rels);
            let b = random_pc(&mut rng, Context::Rcf, &rels);
            let u = union(&a, &b).unwrap();
            let i = intersect(&a, &b).unwrap();
            let desc = describe_univariate_rcf(&a).unwrap();
            for _ in 0..30 {
                // small denominators hit rational roots often
                let x = rat(rng.gen_range(-12..=12), rng.gen_range(1..=3));
                let pt = at(x.clone());
                let (ma, mb) = (membership(&a, &pt).unwrap(), membership(&b, &pt).unwrap());
                assert_eq!(membership(&u, &pt).unwrap(), ma || mb);
                assert_eq!(membership(&i, &pt).unwrap(), ma && mb);
                assert_eq!(desc.iter().any(|iv| iv.contains(&x)), ma, "pc {a} at {x}");
            }
        }
    }
}
