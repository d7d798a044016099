use super::*;
use crate::field::GaloisExtensionData;
use crate::morphisms::{chart_image_membership, random_chart};
use crate::poly::roots_over_finite_field;

fn fp(p: u64) -> FieldDescriptor {
    FieldDescriptor::prime(p).unwrap()
}

/// `Σ c · x^i y^j` from `(c, i, j)` triples in variables `[x, y]`.
fn xy(fd: &FieldDescriptor, terms: &[(i64, u32, u32)]) -> MultiPoly {
    MultiPoly::from_terms(fd, &["x", "y"], terms.iter().map(|&(c, i, j)| (vec![i, j], fd.from_i64(c)))).unwrap()
}

fn f9() -> (FieldDescriptor, GaloisExtensionData) {
    let k = fp(3);
    let l = FieldDescriptor::extension(&k, vec![k.one(), k.zero(), k.one()], "u").unwrap();
    let g = finite_galois_data(&l).unwrap();
    (k, g)
}

fn residues(points: &[Point]) -> Vec<Vec<u64>> {
    points.iter().map(|p| p.iter().map(|x| x.as_residue().unwrap()).collect()).collect()
}

/// Independent oracle: scan `L` for roots of `f(x, b)`, multiplicity by
/// repeated division, straight from the polynomial's definition.
fn oracle(input: &SplittingInput, b: &[FieldElement]) -> bool {
    let l = input.galois().ext();
    let k = input.field();
    let mut assignment: Vec<(&str, FieldElement)> = Vec::new();
    for (v, x) in input.base_vars().iter().zip(b) {
        assignment.push((v.as_str(), x.clone()));
    }
    let fb = input.f().partial_eval(&assignment).unwrap().with_vars(&["x"]).unwrap();
    let gb = input.g().partial_eval(&assignment).unwrap().with_vars(&["x"]).unwrap();
    let fl = fb.change_field(l).unwrap();
    let mut total = 0;
    for r in l.enumerate().unwrap() {
        let lin = MultiPoly::from_dense(l, &["x"], "x", &[-&r, l.one()]).unwrap();
        let mut cur = fl.clone();
        let mut mult = 0;
        loop {
            let (q, rem) = crate::poly::univariate_divmod(&cur, &lin, "x").unwrap();
            if !rem.is_zero() {
                break;
            }
            cur = q;
            mult += 1;
        }
        total += mult;
        if mult == 1 {
            if let Some(a) = r.restrict_to(k) {
                if !gb.eval(&[a]).unwrap().is_zero() {
                    return false;
                }
            }
        }
    }
    total == input.degree()
}

#[test]
fn squaring_example_over_f3() {
    let (k, gal) = f9();
    let f = xy(&k, &[(1, 2, 0), (-1, 0, 1)]);
    let input = SplittingInput::new(&f, &xy(&k, &[(1, 0, 0)]), "x", &["y"], &gal).unwrap();
    let p = build_splitting_ideal(&input).unwrap();
    assert_eq!(p.fiber_vars.len(), 4);
    assert_eq!(p.generators.len(), 8);
    assert_eq!(p.provenance, Provenance::SplittingIdeal);
    assert_eq!(residues(&presentation_image(&p, &k).unwrap()), vec![vec![0], vec![2]]);
    assert_eq!(residues(&presentation_image_structured(&p, &k).unwrap()), vec![vec![0], vec![2]]);

    assert!(!splitting_condition_oracle(&input, &[k.from_u64(1)]).unwrap());
    assert!(splitting_condition_oracle(&input, &[k.zero()]).unwrap());
    assert!(splitting_condition_oracle(&input, &[k.from_u64(2)]).unwrap());

    let input0 = SplittingInput::new(&f, &MultiPoly::zero(&k, &["x", "y"]), "x", &["y"], &gal).unwrap();
    let p0 = build_splitting_ideal(&input0).unwrap();
    assert!(p0.generators[4..].iter().all(Generator::is_zero));
    assert_eq!(presentation_image(&p0, &k).unwrap().len(), 3);
}

#[test]
fn linear_fiber_edge_case() {
    let (k, gal) = f9();
    let f = xy(&k, &[(1, 1, 0), (-1, 0, 1)]);
    let g = xy(&k, &[(1, 1, 1), (-1, 0, 0)]);
    let input = SplittingInput::new(&f, &g, "x", &["y"], &gal).unwrap();
    let p = build_splitting_ideal(&input).unwrap();
    assert_eq!(p.generators.len(), 4);
    // image = { b : g(b, b) = b^2 - 1 = 0 }
    let expected: Vec<Vec<u64>> =
        (0..3u64).filter(|b| (b * b + 2) % 3 == 0).map(|b| vec![b]).collect();
    assert_eq!(residues(&presentation_image(&p, &k).unwrap()), expected);
}

#[test]
fn trivial_presentations() {
    let k = fp(3);
    let all = FinitePresentation::new(&k, &["y"], &["z"], vec![]).unwrap();
    assert_eq!(presentation_image(&all, &k).unwrap().len(), 3);
    let none = FinitePresentation::new(&k, &["y"], &["z"], vec![MultiPoly::one(&k, &["y", "z"])]).unwrap();
    assert!(presentation_image(&none, &k).unwrap().is_empty());
    assert_eq!(presentation_image(&all, &FieldDescriptor::rationals()).unwrap_err(), Error::InfiniteField);
    let many: Vec<&str> = vec!["z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8"];
    let big = FinitePresentation::new(&k, &["y"], &many, vec![]).unwrap();
    assert!(matches!(
        presentation_image_with_budget(&big, &k, 1000),
        Err(Error::ExplosionGuard { needed: 19683, budget: 1000 })
    ));
}

const CONFIGS: [(u64, usize, usize, usize); 7] =
    [(2, 2, 2, 1), (3, 2, 2, 1), (3, 2, 2, 2), (3, 3, 2, 1), (5, 2, 2, 1), (2, 2, 3, 1), (3, 2, 3, 1)];

#[test]
fn equivalence_spot_check() {
    for (p, m, d, n) in CONFIGS {
        let k = fp(p);
        for seed in 0..4 {
            let input = random_splitting_input(p, m, d, n, seed).unwrap();
            let pres = build_splitting_ideal(&input).unwrap();
            assert_eq!(pres.generators.len(), 2 * m * d);
            assert_eq!(pres.base_vars.len() + pres.fiber_vars.len(), n + m * d);
            let image = presentation_image(&pres, &k).unwrap();
            assert_eq!(image, presentation_image_structured(&pres, &k).unwrap());
            for b in grid(&k, n).unwrap() {
                let expected = oracle(&input, &b);
                assert_eq!(splitting_condition_oracle(&input, &b).unwrap(), expected);
                assert_eq!(image.contains(&b), expected, "config {:?} seed {seed} b {:?}", (p, m, d, n), b);
            }
        }
    }
}

#[test]
fn product_form_generators_agree_with_expanded() {
    let input = random_splitting_input(3, 3, 2, 1, 11).unwrap();
    let expanded = build_splitting_ideal(&input).unwrap();
    let product = build_splitting_ideal_with(&input, SplitOptions { expansion_terms: 1 }).unwrap();
    assert!(product.generators.iter().any(|g| matches!(g, Generator::ExtProduct { .. })));
    let k = fp(3);
    assert_eq!(presentation_image(&expanded, &k).unwrap(), presentation_image(&product, &k).unwrap());
    for (a, b) in expanded.generators.iter().zip(&product.generators) {
        assert_eq!(Some(a.expand(usize::MAX).unwrap().unwrap()), b.expand(usize::MAX).unwrap());
    }
}

#[test]
fn coefficients_outside_base_are_rejected() {
    let (k, gal) = f9();
    let l = gal.ext().clone();
    let u = l.generator().unwrap();
    let f = MultiPoly::from_terms(&l, &["x", "y"], [(vec![2, 0], l.one()), (vec![0, 0], u)]).unwrap();
    let g = MultiPoly::one(&k, &["x", "y"]);
    assert!(matches!(SplittingInput::new(&f, &g, "x", &["y"], &gal), Err(Error::CoefficientNotInBase(_))));
    let bad = GaloisExtensionData::new(&l, vec![l.generator().unwrap(), l.one()]);
    assert!(matches!(bad, Err(Error::GaloisDataInvalid(_))));
}

#[test]
fn rational_mode() {
    let q = FieldDescriptor::rationals();
    let l = FieldDescriptor::extension(&q, vec![q.one(), q.zero(), q.one()], "i").unwrap();
    let i = l.generator().unwrap();
    let gal = GaloisExtensionData::new(&l, vec![i.clone(), -&i]).unwrap();
    let f = xy(&q, &[(1, 2, 0), (1, 0, 1)]);
    let input = SplittingInput::new(&f, &xy(&q, &[(1, 0, 0)]), "x", &["y"], &gal).unwrap();
    assert!(splitting_condition_oracle(&input, &[q.from_i64(1)]).unwrap());
    assert!(!splitting_condition_oracle(&input, &[q.from_i64(-1)]).unwrap());
    assert!(!splitting_condition_oracle(&input, &[q.from_i64(2)]).unwrap());
    assert!(splitting_condition_oracle(&input, &[q.from_i64(4)]).unwrap());
    assert!(splitting_condition_oracle(&input, &[q.zero()]).unwrap());

    // the presentation vanishes at the coordinates of the roots ±i when b = 1
    let p = build_splitting_ideal(&input).unwrap();
    assert_eq!(p.generators.len(), 8);
    let pt: Vec<FieldElement> = [1, 0, 1, 0, -1].iter().map(|&c| q.from_i64(c)).collect();
    assert!(p.generators.iter().all(|g| g.eval(&pt).unwrap().is_zero()));

    // an irreducible cubic never splits in a quadratic field
    let cubic = xy(&q, &[(1, 3, 0), (-2, 0, 1)]);
    let input3 = SplittingInput::new(&cubic, &xy(&q, &[(1, 0, 0)]), "x", &["y"], &gal).unwrap();
    assert!(!splitting_condition_oracle(&input3, &[q.from_i64(1)]).unwrap());
}

#[test]
fn charp_examples() {
    let f2 = fp(2);
    let ft = FieldDescriptor::function_field(&f2, "t").unwrap();
    let t = ft.generator().unwrap();
    let f = MultiPoly::from_terms(&ft, &["x"], [(vec![2], ft.one()), (vec![0], t.clone())]).unwrap();
    let zero = MultiPoly::zero(&ft, &["x"]);
    let (f2x, g2) = charp_transform(&f, &zero, "x", 2, 2).unwrap();
    let expected = MultiPoly::from_terms(&ft, &["x"], [(vec![2], ft.one()), (vec![0], t.pow(4))]).unwrap();
    assert_eq!(f2x, expected);
    assert!(g2.is_zero());
    assert_eq!(charp_transform(&f, &zero, "x", 2, 1).unwrap_err(), Error::ExponentTooSmall { power: 2, degree: 2 });
    assert_eq!(charp_transform(&f, &zero, "x", 3, 2).unwrap_err(), Error::CharMismatch { expected: 3, actual: 2 });
}

/// Root multiset of `f` over `big`, each root raised to `p^k`.
fn powered_roots(f: &MultiPoly, big: &FieldDescriptor, power: u64) -> Vec<(FieldElement, usize)> {
    let mut v: Vec<_> = roots_over_finite_field(f, big).unwrap().into_iter().map(|(r, m)| (r.pow(power), m)).collect();
    v.sort();
    v
}

#[test]
fn frobenius_transform_permutes_roots() {
    let f2 = fp(2);
    let f4 = FieldDescriptor::finite(2, 2, "w").unwrap();
    for (base, deg) in [(&f2, 2usize), (&f2, 3), (&f4, 2)] {
        let big = FieldDescriptor::extension_of_degree(base, arith::lcm_range(deg), "v").unwrap();
        for coeffs in crate::morphisms::cartesian(&base.enumerate().unwrap(), deg) {
            let mut dense = coeffs.clone();
            dense.push(base.one());
            let f = MultiPoly::from_dense(base, &["x"], "x", &dense).unwrap();
            let zero = MultiPoly::zero(base, &["x"]);
            let k = if deg < 2 { 1 } else { 2 };
            let (f2x, _) = charp_transform(&f, &zero, "x", 2, k).unwrap();
            let power = 2u64.pow(k);
            let mut direct = roots_over_finite_field(&f2x, &big).unwrap();
            direct.sort();
            assert_eq!(direct, powered_roots(&f, &big, power));
        }
    }
}

#[test]
fn complement_examples() {
    for (p, chart_image, complement) in [(5u64, vec![vec![1], vec![4]], vec![vec![0], vec![2], vec![3]]), (3, vec![vec![1]], vec![vec![0], vec![2]])] {
        let k = fp(p);
        let x = xy(&k, &[(1, 1, 0)]);
        let f = xy(&k, &[(1, 2, 0), (-1, 0, 1)]);
        let chart = StandardEtaleChart::new(&["y"], "x", f, x.scale(&k.from_u64(2))).unwrap();
        let e_image: Vec<Vec<u64>> = (0..p)
            .filter(|&b| chart_image_membership(&chart, &[k.from_u64(b)], &k).unwrap())
            .map(|b| vec![b])
            .collect();
        assert_eq!(e_image, chart_image);
        let pres = complement_presentation(&chart, &k).unwrap();
        assert_eq!(residues(&presentation_image(&pres, &k).unwrap()), complement);
        assert_eq!(residues(&presentation_image_structured(&pres, &k).unwrap()), complement);
    }
}

#[test]
fn complement_partition_spot_check() {
    for p in [3u64, 5] {
        let k = fp(p);
        for m in [2usize, 3] {
            for seed in 0..3 {
                let chart = random_chart(&k, 1, m, seed).unwrap();
                let pres = complement_presentation(&chart, &k).unwrap();
                for b in grid(&k, 1).unwrap() {
                    let in_e = chart_image_membership(&chart, &b, &k).unwrap();
                    let in_f = image_contains_structured(&pres, &k, &b).unwrap();
                    assert_ne!(in_e, in_f, "p={p} m={m} seed={seed} b={b:?}");
                }
            }
        }
    }
}
