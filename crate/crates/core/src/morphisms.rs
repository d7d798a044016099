//! Standard étale charts, the polynomial-multiplication morphism and the
//! Jacobian/resultant identity for it.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldDescriptor, FieldElement};
use crate::poly::{determinant, jacobian_det, jacobian_matrix, sylvester_resultant, MultiPoly, PolyMap};

/// How the étale condition of a chart has been established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChartValidity {
    /// `∂f/∂x` divides `g`, so it is invertible wherever `g ≠ 0`.
    Sufficient,
    /// `∂f/∂x ≠ 0` at every point of `f = 0 ≠ g` over the named finite field.
    PointwiseVerified(FieldDescriptor),
    Unverified,
}

/// `{f = 0 ≠ g} ⊆ 𝔸ⁿ × 𝔸¹` with `f` monic in the fiber variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandardEtaleChart {
    field: FieldDescriptor,
    base_vars: Vec<String>,
    fiber_var: String,
    f: MultiPoly,
    g: MultiPoly,
    validity: ChartValidity,
}

/// Default base variable names: `y` for one, `y1..yn` otherwise.
pub fn base_var_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["y".to_string()]
    } else {
        (1..=n).map(|i| format!("y{i}")).collect()
    }
}

impl StandardEtaleChart {
    /// Polynomials are reindexed onto `base_vars ++ [fiber_var]`.
    pub fn new<S: AsRef<str>>(base_vars: &[S], fiber_var: &str, f: MultiPoly, g: MultiPoly) -> Result<Self> {
        if f.field() != g.field() {
            return Err(Error::DescriptorMismatch(format!("{} vs {}", f.field(), g.field())));
        }
        let base_vars: Vec<String> = base_vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut vars = base_vars.clone();
        vars.push(fiber_var.to_string());
        let f = f.with_vars(&vars)?;
        let g = g.with_vars(&vars)?;
        if !f.is_monic_in(fiber_var) {
            return Err(Error::NotMonic(fiber_var.to_string()));
        }
        let df = f.derivative(fiber_var);
        let validity = if !df.is_zero() && g.div_exact(&df)?.is_some() {
            ChartValidity::Sufficient
        } else {
            ChartValidity::Unverified
        };
        Ok(StandardEtaleChart { field: f.field().clone(), base_vars, fiber_var: fiber_var.to_string(), f, g, validity })
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn base_vars(&self) -> &[String] {
        &self.base_vars
    }

    pub fn fiber_var(&self) -> &str {
        &self.fiber_var
    }

    /// `base_vars ++ [fiber_var]`, the variable order of `f` and `g`.
    pub fn vars(&self) -> &[String] {
        self.f.vars()
    }

    pub fn f(&self) -> &MultiPoly {
        &self.f
    }

    pub fn g(&self) -> &MultiPoly {
        &self.g
    }

    pub fn validity(&self) -> &ChartValidity {
        &self.validity
    }

    pub fn dimension(&self) -> usize {
        self.base_vars.len()
    }

    pub fn degree(&self) -> usize {
        self.f.degree_in(&self.fiber_var)
    }

    /// Check `∂f/∂x ≠ 0` on `f = 0 ≠ g` over every point of `fd^{n+1}`.
    /// A chart already known to be sufficient keeps that mode.
    pub fn verify_pointwise(&self, fd: &FieldDescriptor) -> Result<Self> {
        let elems = fd.enumerate()?;
        let f = self.f.change_field(fd)?;
        let g = self.g.change_field(fd)?;
        let df = f.derivative(&self.fiber_var);
        let arity = self.base_vars.len() + 1;
        for point in cartesian(&elems, arity) {
            if f.eval(&point)?.is_zero() && !g.eval(&point)?.is_zero() && df.eval(&point)?.is_zero() {
                return Err(Error::ChartNotEtale(format_point(&point)));
            }
        }
        let mut out = self.clone();
        if out.validity != ChartValidity::Sufficient {
            out.validity = ChartValidity::PointwiseVerified(fd.clone());
        }
        Ok(out)
    }
}

pub(crate) fn format_point(point: &[FieldElement]) -> String {
    let parts: Vec<String> = point.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// All tuples of length `k` over `elems`, lexicographic.
pub(crate) fn cartesian(elems: &[FieldElement], k: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = elems.len();
    let total = (q as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
    let total = if q == 0 && k > 0 { 0 } else { total };
    (0..total).map(move |mut idx| {
        let mut point = vec![elems[0].clone(); k];
        for slot in point.iter_mut().rev() {
            *slot = elems[(idx % q as u128) as usize].clone();
            idx /= q as u128;
        }
        point
    })
}

/// Is `b` in the chart's image, i.e. is there `r ∈ fd` with `f(b, r) = 0 ≠ g(b, r)`?
pub fn chart_image_membership(chart: &StandardEtaleChart, b: &[FieldElement], fd: &FieldDescriptor) -> Result<bool> {
    if !fd.is_finite() {
        return Err(Error::InfiniteField);
    }
    if b.len() != chart.dimension() {
        return Err(Error::ArityMismatch { expected: chart.dimension(), actual: b.len() });
    }
    let f = chart.f.change_field(fd)?;
    let g = chart.g.change_field(fd)?;
    let mut point = b.to_vec();
    point.push(fd.zero());
    for r in fd.enumerate()? {
        *point.last_mut().expect("fiber slot") = r;
        if f.eval(&point)?.is_zero() && !g.eval(&point)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A seeded chart with `f` monic of degree `deg` in `x` (coefficients of
/// total degree ≤ 1 in the `y`s) and `g = (∂f/∂x)·u` for a random nonzero `u`.
pub fn random_chart(fd: &FieldDescriptor, n: usize, deg: usize, seed: u64) -> Result<StandardEtaleChart> {
    if deg < 2 {
        return Err(Error::BoundExceeded("chart degree must be at least 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = base_var_names(n);
    let mut vars = base.clone();
    vars.push("x".into());
    let linear = |rng: &mut ChaCha8Rng| -> Result<MultiPoly> {
        let mut terms = vec![(vec![0; n + 1], fd.random_element(rng))];
        for i in 0..n {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            terms.push((e, fd.random_element(rng)));
        }
        MultiPoly::from_terms(fd, &vars, terms)
    };
    loop {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            coeffs.push(linear(&mut rng)?);
        }
        coeffs.push(MultiPoly::one(fd, &vars));
        let f = MultiPoly::from_coefficients_in("x", &coeffs)?.with_vars(&vars)?;
        let df = f.derivative("x");
        if df.is_zero() {
            continue;
        }
        let mut u = linear(&mut rng)?;
        if rng.gen_bool(0.5) {
            u = &u + &MultiPoly::var(fd, &vars, "x")?.scale(&fd.random_element(&mut rng));
        }
        if u.is_zero() {
            u = MultiPoly::one(fd, &vars);
        }
        let g = &df * &u;
        return StandardEtaleChart::new(&base, "x", f, g);
    }
}

/// The coefficient map `Poly_n × Poly_m → Poly_{n+m}` of monic polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicationMapSpec {
    pub n: usize,
    pub m: usize,
    pub map: PolyMap,
}

fn coefficient_names(n: usize, m: usize) -> Vec<String> {
    (0..n).map(|i| format!("a{i}")).chain((0..m).map(|j| format!("b{j}"))).collect()
}

/// Inputs `a0..a(n-1), b0..b(m-1)`; output `k` is `Σ_{i+j=k} a_i b_j` with `a_n = b_m = 1`.
pub fn build_multiplication_map(n: usize, m: usize) -> Result<MultiplicationMapSpec> {
    if n == 0 || m == 0 {
        return Err(Error::BoundExceeded("degrees must be positive".into()));
    }
    let q = FieldDescriptor::rationals();
    let names = coefficient_names(n, m);
    let coeff = |prefix: char, i: usize, top: usize| -> Result<MultiPoly> {
        if i == top {
            Ok(MultiPoly::one(&q, &names))
        } else {
            MultiPoly::var(&q, &names, &format!("{prefix}{i}"))
        }
    };
    let mut outputs = Vec::with_capacity(n + m);
    for k in 0..n + m {
        let mut acc = MultiPoly::zero(&q, &names);
        for i in 0..=n {
            if k < i || k - i > m {
                continue;
            }
            acc = &acc + &(&coeff('a', i, n)? * &coeff('b', k - i, m)?);
        }
        outputs.push(acc);
    }
    Ok(MultiplicationMapSpec { n, m, map: PolyMap::new(&q, &names, outputs)? })
}

/// Monic `x^deg + Σ c_i x^i` over the coefficients' field.
fn monic_from(coeffs: &[FieldElement], field: &FieldDescriptor, var: &str) -> Result<MultiPoly> {
    let mut dense = coeffs.to_vec();
    dense.push(field.one());
    MultiPoly::from_dense(field, &[var], var, &dense)
}

/// Étale test at a point: the resultant of the two reconstructed monic
/// polynomials is nonzero. The point may lie over any field.
pub fn multiplication_etale_at(spec: &MultiplicationMapSpec, point: &[FieldElement]) -> Result<bool> {
    if point.len() != spec.n + spec.m {
        return Err(Error::ArityMismatch { expected: spec.n + spec.m, actual: point.len() });
    }
    let field = point[0].field().clone();
    if point.iter().any(|c| c.field() != &field) {
        return Err(Error::DescriptorMismatch("point coordinates over different fields".into()));
    }
    let g = monic_from(&point[..spec.n], &field, "x")?;
    let h = monic_from(&point[spec.n..], &field, "x")?;
    Ok(!sylvester_resultant(&g, &h, "x")?.is_zero())
}

/// Outcome of the symbolic Jacobian/resultant comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylvesterJacobianReport {
    pub n: usize,
    pub m: usize,
    pub equal_up_to_sign: bool,
    /// `+1` or `-1` when equal up to sign, `0` otherwise.
    pub sign: i8,
    pub jacobian: MultiPoly,
    pub resultant: MultiPoly,
    /// Random rational points at which the numeric cross-check agreed.
    pub spot_checks_passed: usize,
    pub spot_checks: usize,
}

pub const SPOT_CHECKS: usize = 20;

/// Compare `det Jac` of the multiplication map with `Res(g, h)` for generic
/// monic `g`, `h` of degrees `n`, `m`, symbolically over ℚ, then re-check the
/// sign relation numerically at seeded random rational points.
pub fn verify_sylvester_jacobian(n: usize, m: usize, bound: usize, seed: u64) -> Result<SylvesterJacobianReport> {
    if n + m > bound {
        return Err(Error::BoundExceeded(format!("n + m = {} exceeds {bound}", n + m)));
    }
    let spec = build_multiplication_map(n, m)?;
    let q = spec.map.field().clone();
    let names = spec.map.inputs().to_vec();
    let mut vars = names.clone();
    vars.push("x".into());
    let generic = |prefix: char, deg: usize| -> Result<MultiPoly> {
        let mut coeffs = Vec::with_capacity(deg + 1);
        for i in 0..deg {
            coeffs.push(MultiPoly::var(&q, &vars, &format!("{prefix}{i}"))?);
        }
        coeffs.push(MultiPoly::one(&q, &vars));
        MultiPoly::from_coefficients_in("x", &coeffs)?.with_vars(&vars)
    };
    let g = generic('a', n)?;
    let h = generic('b', m)?;
    let resultant = sylvester_resultant(&g, &h, "x")?.with_vars(&names)?;
    let jacobian = jacobian_det(&spec.map)?.with_vars(&names)?;
    let sign = if jacobian == resultant {
        1
    } else if jacobian == -&resultant {
        -1
    } else {
        0
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let jac = jacobian_matrix(&spec.map);
    let mut passed = 0;
    for _ in 0..SPOT_CHECKS {
        let point: Vec<FieldElement> = (0..n + m).map(|_| q.random_element(&mut rng)).collect();
        let numeric: Vec<Vec<MultiPoly>> = jac
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| Ok(MultiPoly::constant(&q, &[] as &[&str], e.eval(&point)?)))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let det = determinant(&numeric)?.constant_value().unwrap_or_else(|| q.zero());
        let gp = monic_from(&point[..n], &q, "x")?;
        let hp = monic_from(&point[n..], &q, "x")?;
        let res = sylvester_resultant(&gp, &hp, "x")?.constant_value().unwrap_or_else(|| q.zero());
        let expected = if sign < 0 { -&res } else { res };
        if sign != 0 && det == expected && jacobian.eval(&point)? == det {
            passed += 1;
        }
    }
    Ok(SylvesterJacobianReport {
        n,
        m,
        equal_up_to_sign: sign != 0 && passed == SPOT_CHECKS,
        sign,
        jacobian,
        resultant,
        spot_checks_passed: passed,
        spot_checks: SPOT_CHECKS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64) -> FieldDescriptor {
        FieldDescriptor::prime(p).unwrap()
    }

    fn squaring_chart(p: u64) -> StandardEtaleChart {
        let fd = fp(p);
        let vars = ["y", "x"];
        let x = MultiPoly::var(&fd, &vars, "x").unwrap();
        let y = MultiPoly::var(&fd, &vars, "y").unwrap();
        let f = &(&x * &x) - &y;
        let g = x.scale(&fd.from_u64(2));
        StandardEtaleChart::new(&["y"], "x", f, g).unwrap()
    }

    #[test]
    fn multiplication_map_shapes() {
        let s = build_multiplication_map(1, 1).unwrap();
        let q = FieldDescriptor::rationals();
        let names = ["a0", "b0"];
        let a = MultiPoly::var(&q, &names, "a0").unwrap();
        let b = MultiPoly::var(&q, &names, "b0").unwrap();
        assert_eq!(s.map.outputs()[0], &a * &b);
        assert_eq!(s.map.outputs()[1], &a + &b);

        let s = build_multiplication_map(1, 2).unwrap();
        let names = ["a0", "b0", "b1"];
        let v = |n: &str| MultiPoly::var(&q, &names, n).unwrap();
        assert_eq!(s.map.outputs()[0], &v("a0") * &v("b0"));
        assert_eq!(s.map.outputs()[1], &(&v("a0") * &v("b1")) + &v("b0"));
        assert_eq!(s.map.outputs()[2], &v("a0") + &v("b1"));
        for (n, m) in [(2, 3), (3, 1), (1, 4)] {
            assert_eq!(build_multiplication_map(n, m).unwrap().map.outputs().len(), n + m);
        }
    }

    #[test]
    fn etale_at_points() {
        let q = FieldDescriptor::rationals();
        let s11 = build_multiplication_map(1, 1).unwrap();
        assert!(multiplication_etale_at(&s11, &[q.from_i64(1), q.from_i64(2)]).unwrap());
        assert!(!multiplication_etale_at(&s11, &[q.from_i64(1), q.from_i64(1)]).unwrap());
        let s21 = build_multiplication_map(2, 1).unwrap();
        assert!(multiplication_etale_at(&s21, &[q.from_i64(1), q.zero(), q.from_i64(-1)]).unwrap());
        assert_eq!(
            multiplication_etale_at(&s11, &[q.one()]),
            Err(Error::ArityMismatch { expected: 2, actual: 1 })
        );
    }

    #[test]
    fn sylvester_jacobian_small_cases() {
        let r = verify_sylvester_jacobian(1, 1, 6, 1).unwrap();
        assert!(r.equal_up_to_sign);
        assert_eq!(r.sign, 1);
        let q = FieldDescriptor::rationals();
        let names = ["a0", "b0"];
        let expected = &MultiPoly::var(&q, &names, "b0").unwrap() - &MultiPoly::var(&q, &names, "a0").unwrap();
        assert_eq!(r.jacobian, expected);
        for (n, m) in [(1, 2), (2, 2)] {
            let r = verify_sylvester_jacobian(n, m, 6, 7).unwrap();
            assert!(r.equal_up_to_sign, "({n},{m})");
            assert_eq!(r.spot_checks_passed, SPOT_CHECKS);
        }
        assert!(matches!(verify_sylvester_jacobian(4, 3, 6, 0), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn chart_membership_examples() {
        let chart = squaring_chart(5);
        assert_eq!(chart.validity(), &ChartValidity::Sufficient);
        let fd = fp(5);
        assert!(chart_image_membership(&chart, &[fd.from_u64(4)], &fd).unwrap());
        assert!(!chart_image_membership(&chart, &[fd.zero()], &fd).unwrap());
        assert!(!chart_image_membership(&chart, &[fd.from_u64(2)], &fd).unwrap());
        assert_eq!(
            chart_image_membership(&chart, &[fd.zero()], &FieldDescriptor::rationals()),
            Err(Error::InfiniteField)
        );
    }

    #[test]
    fn etale_iff_coprime_over_f3() {
        let fd = fp(3);
        let elems = fd.enumerate().unwrap();
        for (n, m) in [(1, 1), (1, 2)] {
            let spec = build_multiplication_map(n, m).unwrap();
            for point in cartesian(&elems, n + m) {
                let g = monic_from(&point[..n], &fd, "x").unwrap();
                let h = monic_from(&point[n..], &fd, "x").unwrap();
                let coprime = crate::poly::gcd_univariate(&g, &h, "x").unwrap().is_constant();
                assert_eq!(multiplication_etale_at(&spec, &point).unwrap(), coprime);
            }
        }
    }

    #[test]
    fn random_charts_are_sufficient_and_deterministic() {
        let fd = fp(5);
        for seed in 0..10 {
            let c = random_chart(&fd, 1, 3, seed).unwrap();
            assert_eq!(c, random_chart(&fd, 1, 3, seed).unwrap());
            assert_eq!(c.validity(), &ChartValidity::Sufficient);
            let df = c.f().derivative("x");
            assert!(c.g().div_exact(&df).unwrap().is_some());
            // membership agrees with a direct scan and every witness has f' ≠ 0
            for b in fd.enumerate().unwrap() {
                let mut witness = false;
                for r in fd.enumerate().unwrap() {
                    let pt = [b.clone(), r];
                    if c.f().eval(&pt).unwrap().is_zero() && !c.g().eval(&pt).unwrap().is_zero() {
                        assert!(!df.eval(&pt).unwrap().is_zero());
                        witness = true;
                    }
                }
                assert_eq!(chart_image_membership(&c, &[b], &fd).unwrap(), witness);
            }
        }
    }

    #[test]
    fn pointwise_verification() {
        let fd = fp(3);
        let vars = ["y", "x"];
        let x = MultiPoly::var(&fd, &vars, "x").unwrap();
        let y = MultiPoly::var(&fd, &vars, "y").unwrap();
        // g = y is not a multiple of f' = 2x, but f' vanishes on f = 0 only where y = 0
        let chart = StandardEtaleChart::new(&["y"], "x", &(&x * &x) - &y, y.clone()).unwrap();
        assert_eq!(chart.validity(), &ChartValidity::Unverified);
        let checked = chart.verify_pointwise(&fd).unwrap();
        assert_eq!(checked.validity(), &ChartValidity::PointwiseVerified(fd.clone()));
        // g = 1 admits the double root at y = 0
        let bad = StandardEtaleChart::new(&["y"], "x", &(&x * &x) - &y, MultiPoly::one(&fd, &vars)).unwrap();
        assert!(matches!(bad.verify_pointwise(&fd), Err(Error::ChartNotEtale(_))));
    }

    #[test]
    fn chart_requires_monic() {
        let fd = fp(3);
        let vars = ["y", "x"];
        let x = MultiPoly::var(&fd, &vars, "x").unwrap();
        let y = MultiPoly::var(&fd, &vars, "y").unwrap();
        let f = &y * &x;
        assert_eq!(StandardEtaleChart::new(&["y"], "x", f, y).unwrap_err(), Error::NotMonic("x".into()));
    }
}
