use super::*;
use crate::field::FieldDescriptor;
use crate::morphisms::cartesian;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> FieldDescriptor {
    FieldDescriptor::rationals()
}

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn ux(fd: &FieldDescriptor, coeffs: &[i64]) -> MultiPoly {
    let dense: Vec<FieldElement> = coeffs.iter().map(|&c| fd.from_i64(c)).collect();
    MultiPoly::from_dense(fd, &["x"], "x", &dense).unwrap()
}

fn r(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

#[test]
fn arithmetic_examples() {
    let vars = ["x", "y"];
    let x = MultiPoly::var(&q(), &vars, "x").unwrap();
    let y = MultiPoly::var(&q(), &vars, "y").unwrap();
    let prod = poly_arith(&(&x + &y), &(&x - &y), PolyOp::Mul).unwrap();
    assert_eq!(prod, &x.pow(2) - &y.pow(2));
    let f2 = fp(2);
    assert_eq!(ux(&f2, &[1, 1]).pow(2), ux(&f2, &[1, 0, 1]));
    let p = ux(&q(), &[3, 0, 2]);
    assert_eq!(poly_arith(&p, &MultiPoly::zero(&q(), &["x"]), PolyOp::Add).unwrap(), p);
    assert!(matches!(poly_arith(&p, &ux(&f2, &[1]), PolyOp::Add), Err(Error::DescriptorMismatch(_))));
    let merged = poly_arith(&ux(&q(), &[0, 1]), &MultiPoly::var(&q(), &["y"], "y").unwrap(), PolyOp::Add).unwrap();
    assert_eq!(merged.vars(), &["x".to_string(), "y".to_string()]);
}

#[test]
fn divmod_and_gcd_examples() {
    let (qq, rr) = univariate_divmod(&ux(&q(), &[-1, 0, 1]), &ux(&q(), &[-1, 1]), "x").unwrap();
    assert_eq!((qq, rr.is_zero()), (ux(&q(), &[1, 1]), true));
    let (qq, rr) = univariate_divmod(&ux(&q(), &[1, 0, 1]), &ux(&q(), &[-1, 1]), "x").unwrap();
    assert_eq!((qq, rr), (ux(&q(), &[1, 1]), ux(&q(), &[2])));
    let (qq, rr) = univariate_divmod(&ux(&q(), &[0, 1]), &ux(&q(), &[0, 0, 1]), "x").unwrap();
    assert_eq!((qq.is_zero(), rr), (true, ux(&q(), &[0, 1])));
    assert_eq!(
        univariate_divmod(&ux(&q(), &[1]), &MultiPoly::zero(&q(), &["x"]), "x").unwrap_err(),
        Error::DivisionByZeroPoly
    );
    assert_eq!(gcd_univariate(&ux(&q(), &[-1, 0, 1]), &ux(&q(), &[-1, 1]), "x").unwrap(), ux(&q(), &[-1, 1]));
    let f5 = fp(5);
    assert_eq!(gcd_univariate(&ux(&f5, &[1, 0, 1]), &ux(&f5, &[2, 1]), "x").unwrap(), ux(&f5, &[2, 1]));
    let f2t = FieldDescriptor::function_field(&fp(2), "t").unwrap();
    let c = &f2t.function_data().unwrap().coeff;
    let t = f2t.fraction(vec![c.zero(), c.one()], vec![c.one()]).unwrap();
    let x = MultiPoly::var(&f2t, &["x"], "x").unwrap();
    let f = &x.pow(2) + &MultiPoly::constant(&f2t, &["x"], t);
    assert!(f.derivative("x").is_zero());
    assert_eq!(gcd_univariate(&f, &f.derivative("x"), "x").unwrap(), f);
    let xy = MultiPoly::var(&q(), &["x", "y"], "y").unwrap();
    assert!(matches!(gcd_univariate(&(&xy + &ux(&q(), &[0, 1])), &ux(&q(), &[1]), "x"), Err(Error::NotUnivariate(_))));
}

#[test]
fn derivative_examples() {
    assert!(ux(&fp(3), &[0, 0, 0, 1]).derivative("x").is_zero());
    let vars = ["x", "y"];
    let x = MultiPoly::var(&q(), &vars, "x").unwrap();
    let y = MultiPoly::var(&q(), &vars, "y").unwrap();
    assert_eq!(derivative(&(&x.pow(2) + &y), "x"), x.scale(&q().from_i64(2)));
}

#[test]
fn resultant_examples() {
    let vars = ["x", "a", "b"];
    let v = |n| MultiPoly::var(&q(), &vars, n).unwrap();
    let res = sylvester_resultant(&(&v("x") + &v("a")), &(&v("x") + &v("b")), "x").unwrap();
    assert_eq!(res.with_vars(&vars).unwrap(), &v("b") - &v("a"));
    let res = sylvester_resultant(&ux(&q(), &[1, 0, 1]), &ux(&q(), &[-1, 1]), "x").unwrap();
    assert_eq!(res.constant_value().unwrap(), q().from_i64(2));
    assert!(sylvester_resultant(&ux(&q(), &[-1, 0, 1]), &ux(&q(), &[1, 1]), "x").unwrap().is_zero());
    assert_eq!(sylvester_resultant(&ux(&q(), &[2]), &ux(&q(), &[3]), "x").unwrap_err(), Error::BothConstant);
    let res = sylvester_resultant(&ux(&q(), &[3]), &ux(&q(), &[1, 0, 1]), "x").unwrap();
    assert_eq!(res.constant_value().unwrap(), q().from_i64(9));
}

#[test]
fn sturm_and_isolation_examples() {
    assert_eq!(sturm_count(&ux(&q(), &[-2, 0, 1]), &r(0), &r(2)).unwrap(), 1);
    assert_eq!(sturm_count(&ux(&q(), &[0, -1, 0, 1]), &r(-2), &r(2)).unwrap(), 3);
    assert_eq!(sturm_count(&ux(&q(), &[1, 0, 1]), &r(-10), &r(10)).unwrap(), 0);
    assert_eq!(sturm_count(&ux(&q(), &[-1, 1]), &r(1), &r(2)).unwrap_err(), Error::EndpointRoot);
    let iv = real_root_isolate(&ux(&q(), &[-2, 0, 1])).unwrap();
    assert_eq!(iv.len(), 2);
    for i in &iv {
        assert_eq!(sturm_count(&ux(&q(), &[-2, 0, 1]), &i.lo, &i.hi).unwrap(), 1);
    }
    assert!(iv[0].hi <= r(0) && r(0) <= iv[1].lo);
    let iv = real_root_isolate(&ux(&q(), &[0, 0, 1])).unwrap();
    assert_eq!(iv.len(), 1);
    assert!(iv[0].contains(&r(0)));
    assert!(real_root_isolate(&ux(&q(), &[1, 0, 1])).unwrap().is_empty());
    assert_eq!(real_root_isolate(&MultiPoly::zero(&q(), &["x"])).unwrap_err(), Error::ZeroPolynomial);
}

#[test]
fn finite_field_root_examples() {
    let f5 = fp(5);
    let roots: Vec<(u64, usize)> = roots_over_finite_field(&ux(&f5, &[-1, 0, 1]), &f5)
        .unwrap()
        .into_iter()
        .map(|(x, m)| (x.as_residue().unwrap(), m))
        .collect();
    assert_eq!(roots, vec![(1, 1), (4, 1)]);
    let f3 = fp(3);
    let roots = roots_over_finite_field(&ux(&f3, &[0, 0, 1]), &f3).unwrap();
    assert_eq!(roots, vec![(f3.zero(), 2)]);
    let f9 = FieldDescriptor::finite(3, 2, "u").unwrap();
    let roots = roots_over_finite_field(&ux(&f3, &[1, 0, 1]), &f9).unwrap();
    assert_eq!(roots.len(), 2);
    for (x, m) in roots {
        assert_eq!(m, 1);
        assert!((&(&x * &x) + &f9.one()).is_zero());
    }
    assert_eq!(roots_over_finite_field(&ux(&q(), &[0, 1]), &q()).unwrap_err(), Error::InfiniteField);
}

#[test]
fn jacobian_examples() {
    let vars = ["a", "b"];
    let a = MultiPoly::var(&q(), &vars, "a").unwrap();
    let b = MultiPoly::var(&q(), &vars, "b").unwrap();
    let map = PolyMap::new(&q(), &vars, vec![&a * &b, &a + &b]).unwrap();
    assert_eq!(jacobian_det(&map).unwrap(), &b - &a);
    let m = jacobian_matrix(&map);
    assert_eq!(determinant_cofactor(&m).unwrap(), &b - &a);
    let v3 = ["x", "y", "z"];
    let id = PolyMap::new(&q(), &v3, v3.iter().map(|n| MultiPoly::var(&q(), &v3, n).unwrap()).collect()).unwrap();
    assert!(jacobian_det(&id).unwrap().constant_value().unwrap().is_one());
    let c = PolyMap::new(&q(), &vars, vec![MultiPoly::one(&q(), &vars), MultiPoly::one(&q(), &vars)]).unwrap();
    assert!(jacobian_det(&c).unwrap().is_zero());
    let ns = PolyMap::new(&q(), &vars, vec![a.clone()]).unwrap();
    assert_eq!(jacobian_det(&ns).unwrap_err(), Error::NotSquare { rows: 1, cols: 2 });
}

fn monic_polys(fd: &FieldDescriptor, max_deg: usize) -> Vec<MultiPoly> {
    let elems = fd.enumerate().unwrap();
    let mut out = Vec::new();
    for d in 1..=max_deg {
        for mut tail in cartesian(&elems, d) {
            tail.push(fd.one());
            out.push(MultiPoly::from_dense(fd, &["x"], "x", &tail).unwrap());
        }
    }
    out
}

#[test]
fn resultant_vanishes_iff_common_factor_small_fields() {
    for p in [2, 3] {
        let fd = fp(p);
        let all = monic_polys(&fd, 3);
        for f in &all {
            for g in &all {
                let res = sylvester_resultant(f, g, "x").unwrap();
                let h = gcd_univariate(f, g, "x").unwrap();
                assert_eq!(res.is_zero(), h.degree_in("x") > 0, "{f} / {g}");
            }
        }
    }
}

#[test]
fn root_multiplicities_account_for_linear_factors() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let f7 = fp(7);
    for _ in 0..200 {
        let deg = rng.gen_range(1..=5);
        let mut coeffs: Vec<FieldElement> = (0..deg).map(|_| f7.random_element(&mut rng)).collect();
        coeffs.push(f7.one());
        let f = MultiPoly::from_dense(&f7, &["x"], "x", &coeffs).unwrap();
        let roots = roots_over_finite_field(&f, &f7).unwrap();
        let mut rest = f.clone();
        for (root, m) in &roots {
            let lin = MultiPoly::from_dense(&f7, &["x"], "x", &[-root, f7.one()]).unwrap();
            for _ in 0..*m {
                let (qq, rr) = univariate_divmod(&rest, &lin, "x").unwrap();
                assert!(rr.is_zero());
                rest = qq;
            }
        }
        for a in f7.enumerate().unwrap() {
            assert!(!rest.eval(&[a]).unwrap().is_zero());
        }
        let total: usize = roots.iter().map(|(_, m)| m).sum();
        assert_eq!(total == deg, rest.degree_in("x") == 0);
    }
}

#[test]
fn sturm_matches_isolation_catalog() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..60 {
        let deg = rng.gen_range(1..=6);
        let coeffs: Vec<i64> = (0..=deg).map(|i| if i == deg { rng.gen_range(1..=3) } else { rng.gen_range(-6..=6) }).collect();
        let f = ux(&q(), &coeffs);
        let iv = real_root_isolate(&f).unwrap();
        let (lo, hi) = (BigRational::new((-5).into(), 2.into()), BigRational::new(7.into(), 3.into()));
        let fl = f.eval(&[q().from_rational(&lo).unwrap()]).unwrap();
        let fh = f.eval(&[q().from_rational(&hi).unwrap()]).unwrap();
        if fl.is_zero() || fh.is_zero() {
            continue;
        }
        let sturm = sturm_count(&f, &lo, &hi).unwrap();
        let isolated = iv.iter().filter(|i| {
            // refine until the interval sits on one side of each endpoint
            let mut i = (*i).clone();
            for _ in 0..200 {
                if i.hi <= lo || i.lo >= hi || (i.lo >= lo && i.hi <= hi) {
                    break;
                }
                let mid = (&i.lo + &i.hi) / BigRational::from_integer(2.into());
                let sm = sturm_count(&f, &i.lo, &mid);
                match sm {
                    Ok(1) => i.hi = mid,
                    Ok(_) => i.lo = mid,
                    Err(_) => return lo < mid && mid < hi,
                }
            }
            i.lo >= lo && i.hi <= hi
        });
        assert_eq!(isolated.count(), sturm, "{f}");
    }
}

fn random_poly(fd: &FieldDescriptor, rng: &mut ChaCha8Rng) -> MultiPoly {
    let vars = ["x", "y"];
    let terms: Vec<(Vec<u32>, FieldElement)> =
        (0..rng.gen_range(0..5)).map(|_| (vec![rng.gen_range(0..4), rng.gen_range(0..3)], fd.random_element(rng))).collect();
    MultiPoly::from_terms(fd, &vars, terms).unwrap()
}

proptest! {
    #[test]
    fn derivative_is_linear_and_leibniz(seed in any::<u64>(), which in 0usize..3) {
        let fd = [q(), fp(3), FieldDescriptor::finite(2, 2, "u").unwrap()][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (f, g) = (random_poly(&fd, &mut rng), random_poly(&fd, &mut rng));
        let c = fd.random_element(&mut rng);
        prop_assert_eq!((&f + &g.scale(&c)).derivative("x"), &f.derivative("x") + &g.derivative("x").scale(&c));
        prop_assert_eq!((&f * &g).derivative("x"), &(&f.derivative("x") * &g) + &(&f * &g.derivative("x")));
    }

    #[test]
    fn divmod_reconstructs(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ux(&q(), &(0..rng.gen_range(1..7)).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>());
        let mut gc: Vec<i64> = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(-5..=5)).collect();
        gc.push(rng.gen_range(1..=4));
        let g = ux(&q(), &gc);
        let (qq, rr) = univariate_divmod(&f, &g, "x").unwrap();
        prop_assert_eq!(&(&qq * &g) + &rr, f);
        prop_assert!(rr.is_zero() || rr.degree_in("x") < g.degree_in("x"));
    }
}
