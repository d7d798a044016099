use super::*;
use crate::poly::sylvester_resultant;

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

fn univariate_map(fd: &FieldDescriptor, coeffs: &[i64]) -> PolyMap {
    let dense: Vec<FieldElement> = coeffs.iter().map(|&c| fd.from_i64(c)).collect();
    PolyMap::new(fd, &["x"], vec![MultiPoly::from_dense(fd, &["x"], "x", &dense).unwrap()]).unwrap()
}

fn residues(set: &PointSet) -> Vec<u64> {
    set.points().iter().map(|p| p[0].as_residue().unwrap()).collect()
}

#[test]
fn projective_counts_and_normalization() {
    assert_eq!(enumerate_projective(&fp(5), 1).unwrap().len(), 6);
    assert_eq!(enumerate_projective(&fp(3), 0).unwrap().len(), 1);
    let p3 = enumerate_projective(&fp(3), 3).unwrap();
    assert_eq!(p3.len(), 40);
    for p in p3.points() {
        let lead = p.iter().find(|c| !c.is_zero()).unwrap();
        assert!(lead.is_one());
    }
    let f4 = FieldDescriptor::finite(2, 2, "u").unwrap();
    assert_eq!(enumerate_projective(&f4, 2).unwrap().len(), 21);
    assert_eq!(enumerate_projective(&FieldDescriptor::rationals(), 1).unwrap_err(), Error::InfiniteField);
}

#[test]
fn polymap_image_examples() {
    let f5 = fp(5);
    assert_eq!(residues(&polymap_image(&univariate_map(&f5, &[0, 0, 1]), &f5).unwrap()), vec![0, 1, 4]);
    let f3 = fp(3);
    assert_eq!(residues(&polymap_image(&univariate_map(&f3, &[0, -1, 0, 1]), &f3).unwrap()), vec![0]);
    assert_eq!(polymap_image(&univariate_map(&f5, &[0, 1]), &f5).unwrap().len(), 5);
    let q = FieldDescriptor::rationals();
    assert_eq!(polymap_image(&univariate_map(&q, &[0, 1]), &q).unwrap_err(), Error::InfiniteField);
}

#[test]
fn composition_image_is_contained() {
    for p in [3, 5] {
        let fd = fp(p);
        let catalog: Vec<PolyMap> = [&[0, 0, 1][..], &[1, 1, 0, 1], &[0, 2, 1], &[2, 0, 0, 1], &[0, 1, 1, 1, 1]]
            .iter()
            .map(|c| univariate_map(&fd, c))
            .collect();
        for f in &catalog {
            let imf = polymap_image(f, &fd).unwrap();
            for g in &catalog {
                let fg = f.compose(g).unwrap();
                assert!(polymap_image(&fg, &fd).unwrap().is_subset(&imf));
            }
        }
    }
}

#[test]
fn surjectivity_examples() {
    let f5 = fp(5);
    let r = surjectivity_scan(&univariate_map(&f5, &[0, 0, 1]), &f5).unwrap();
    let comp: Vec<u64> = r.complement.iter().map(|c| c.as_residue().unwrap()).collect();
    assert_eq!((comp, r.complement_size(), r.cofinite_proper), (vec![2, 3], 2, true));
    let f7 = fp(7);
    let r = surjectivity_scan(&univariate_map(&f7, &[0, 0, 0, 1]), &f7).unwrap();
    assert_eq!((r.image_size, r.complement_size()), (3, 4));
    let img = polymap_image(&univariate_map(&f7, &[0, 0, 0, 1]), &f7).unwrap();
    assert_eq!(residues(&img), vec![0, 1, 6]);
    let r = surjectivity_scan(&univariate_map(&f7, &[0, 1]), &f7).unwrap();
    assert!(r.complement.is_empty() && !r.cofinite_proper);
}

#[test]
fn closure_laws_on_catalog() {
    let catalog = closure_catalog().unwrap();
    assert_eq!(catalog.len(), 10);
    for c in check_closure_laws(&catalog, &fp(3)).unwrap() {
        assert!(c.product_ok && c.union_ok, "pair {} fails at {:?}", c.index, c.witness);
    }
}

#[test]
fn product_with_empty_presentation() {
    let f3 = fp(3);
    let catalog = closure_catalog().unwrap();
    let p1 = &catalog[0].0;
    let empty = FinitePresentation::new(&f3, &["y"], &[] as &[&str], vec![]).unwrap();
    let prod = presentation_product(p1, &empty).unwrap();
    assert_eq!(presentation_image(&prod, &f3).unwrap(), presentation_image(p1, &f3).unwrap());
    assert_eq!(prod.provenance, Provenance::Product);
}

#[test]
fn base_mismatch() {
    let f3 = fp(3);
    let a = FinitePresentation::new(&f3, &["y"], &["z"], vec![]).unwrap();
    let b = FinitePresentation::new(&f3, &["w"], &["z"], vec![]).unwrap();
    assert!(matches!(presentation_product(&a, &b), Err(Error::BaseMismatch(_))));
    let c = FinitePresentation::new(&fp(5), &["y"], &["z"], vec![]).unwrap();
    assert!(matches!(presentation_disjoint_union(&a, &c), Err(Error::BaseMismatch(_))));
}

#[test]
fn counterexample_zero_fibers_are_empty() {
    let cv = CounterexampleVariety::new(&fp(3), fp(3).from_i64(2)).unwrap();
    assert!(counterexample_fiber(&cv, &fp(3).zero()).unwrap().is_empty());
    for q in [3, 7, 11, 19] {
        let fd = fp(q);
        let cv = CounterexampleVariety::with_first_nonsquare(&fd).unwrap();
        assert!(counterexample_fiber(&cv, &fd.zero()).unwrap().is_empty(), "q = {q}");
    }
}

#[test]
fn counterexample_fiber_points_verify() {
    let fd = fp(7);
    let cv = CounterexampleVariety::with_first_nonsquare(&fd).unwrap();
    for a in fd.enumerate().unwrap() {
        for p in counterexample_fiber(&cv, &a).unwrap().points() {
            assert!(p.iter().find(|c| !c.is_zero()).unwrap().is_one());
            let mut pt = vec![a.clone()];
            pt.extend(p.iter().cloned());
            for form in cv.forms() {
                assert!(form.eval(&pt).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn counterexample_alpha_one_snapshot() {
    let f3 = fp(3);
    let cv = CounterexampleVariety::new(&f3, f3.from_i64(2)).unwrap();
    let fib = counterexample_fiber(&cv, &f3.one()).unwrap();
    assert_eq!(fib.len(), ALPHA_ONE_SNAPSHOT);
}

/// Regression value; agrees with a separate script enumerating all 40 points.
const ALPHA_ONE_SNAPSHOT: usize = 3;

#[test]
fn counterexample_errors() {
    let f3 = fp(3);
    assert_eq!(CounterexampleVariety::new(&f3, f3.one()).unwrap_err(), Error::BetaIsSquare);
    let f4 = FieldDescriptor::finite(2, 2, "u").unwrap();
    assert_eq!(CounterexampleVariety::new(&f4, f4.generator().unwrap()).unwrap_err(), Error::CharacteristicTwo);
}

#[test]
fn quintic_report_passes() {
    let r = check_quintic_example(8, 1).unwrap();
    for c in &r.checks {
        assert!(c.passed, "{}: {}", c.id, c.detail);
    }
    assert_eq!(r.checks.len(), 7);
    assert!(check_quintic_example(2, 1).is_err());
}

#[test]
fn quintic_separability_at_t_via_resultant() {
    let k = f4t().unwrap();
    let f = quintic(&k).unwrap();
    let c = &k.function_data().unwrap().coeff;
    let t = k.fraction(vec![c.zero(), c.one()], vec![c.one()]).unwrap();
    let shifted = f.checked_add(&MultiPoly::constant(&k, &["x"], t.clone())).unwrap();
    let fprime = f.derivative("x");
    assert!(!sylvester_resultant(&shifted, &fprime, "x").unwrap().is_zero());
    assert!(gcd_univariate(&shifted, &fprime, "x").unwrap().is_constant());
    let t2 = &t * &t;
    let bad = f.checked_add(&MultiPoly::constant(&k, &["x"], t2)).unwrap();
    assert!(sylvester_resultant(&bad, &fprime, "x").unwrap().is_zero());
}

#[test]
fn bounded_roots_finds_planted_roots() {
    let k = f4t().unwrap();
    let c = k.function_data().unwrap().coeff.clone();
    let t = k.fraction(vec![c.zero(), c.one()], vec![c.one()]).unwrap();
    let x = MultiPoly::var(&k, &["x"], "x").unwrap();
    let sq = &x.pow(2) + &MultiPoly::constant(&k, &["x"], &t * &t);
    assert_eq!(bounded_roots(&sq, "x", 3).unwrap(), vec![t.clone()]);
    assert!(binomial_valuation_proof(&sq, "x").unwrap().is_none());
    let inv_t = t.inv().unwrap();
    let lin = &x + &MultiPoly::constant(&k, &["x"], inv_t.clone());
    assert_eq!(bounded_roots(&lin, "x", 3).unwrap(), vec![inv_t.clone()]);
    assert_eq!(t_valuation(&inv_t), Some(-1));
}
