use super::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn upoly(fd: &FieldDescriptor, var: &str, coeffs: &[i64]) -> MultiPoly {
    let dense: Vec<FieldElement> = coeffs.iter().map(|&c| fd.from_i64(c)).collect();
    MultiPoly::from_dense(fd, &[var], var, &dense).unwrap()
}

fn rat(n: i64, d: i64) -> FieldElement {
    FieldDescriptor::rationals().from_rational(&BigRational::new(n.into(), d.into())).unwrap()
}

fn f9() -> FieldDescriptor {
    make_extension(&FieldDescriptor::prime(3).unwrap(), &upoly(&FieldDescriptor::prime(3).unwrap(), "u", &[1, 0, 1]))
        .unwrap()
}

fn f2t() -> FieldDescriptor {
    FieldDescriptor::function_field(&FieldDescriptor::prime(2).unwrap(), "t").unwrap()
}

fn catalog() -> Vec<FieldDescriptor> {
    let q = FieldDescriptor::rationals();
    let qi = make_extension(&q, &upoly(&q, "i", &[1, 0, 1])).unwrap();
    let f4 = FieldDescriptor::finite(2, 2, "u").unwrap();
    let f16 = FieldDescriptor::extension_of_degree(&f4, 2, "v").unwrap();
    vec![q, FieldDescriptor::prime(7).unwrap(), f9(), f16, qi, f2t()]
}

#[test]
fn arithmetic_examples() {
    assert_eq!(field_arith(&rat(1, 3), &rat(1, 6), FieldOp::Add).unwrap(), rat(1, 2));
    let f9 = f9();
    let u = f9.generator().unwrap();
    assert_eq!(&u * &u, f9.from_i64(2));
    let k = f2t();
    let one = k.function_data().unwrap().coeff.one();
    let zero = k.function_data().unwrap().coeff.zero();
    let a = k.fraction(vec![zero.clone(), one.clone()], vec![one.clone(), one.clone()]).unwrap();
    let b = k.fraction(vec![one.clone(), one.clone()], vec![zero, one]).unwrap();
    assert!((&a * &b).is_one());
    assert_eq!(field_arith(&rat(1, 1), &rat(0, 1), FieldOp::Div).unwrap_err(), Error::DivisionByZero);
    let f7 = FieldDescriptor::prime(7).unwrap();
    assert!(matches!(field_arith(&f7.one(), &rat(1, 1), FieldOp::Add), Err(Error::DescriptorMismatch(_))));
}

#[test]
fn extension_examples() {
    let f3 = FieldDescriptor::prime(3).unwrap();
    assert_eq!(f9().cardinality(), Some(9));
    let f2 = FieldDescriptor::prime(2).unwrap();
    assert_eq!(make_extension(&f2, &upoly(&f2, "u", &[1, 1, 1])).unwrap().cardinality(), Some(4));
    match make_extension(&f3, &upoly(&f3, "u", &[-1, 0, 1])) {
        Err(Error::Reducible(w)) => assert!(w.contains('u'), "{w}"),
        other => panic!("expected Reducible, got {other:?}"),
    }
    assert!(FieldDescriptor::prime(4).is_err());
}

#[test]
fn frobenius_examples() {
    let f3 = FieldDescriptor::prime(3).unwrap();
    let g = frobenius_galois_data(3, 2, &upoly(&f3, "u", &[1, 0, 1])).unwrap();
    let u = g.ext().generator().unwrap();
    assert_eq!(g.automorphisms(), &[u.clone(), &u * &g.ext().from_i64(2)]);
    let f2 = FieldDescriptor::prime(2).unwrap();
    let g = frobenius_galois_data(2, 2, &upoly(&f2, "u", &[1, 1, 1])).unwrap();
    let u = g.ext().generator().unwrap();
    assert_eq!(g.automorphisms(), &[u.clone(), &u + &g.ext().one()]);
    let f5 = FieldDescriptor::prime(5).unwrap();
    let g = frobenius_galois_data(5, 1, &upoly(&f5, "u", &[-2, 1])).unwrap();
    assert_eq!(g.degree(), 1);
    assert_eq!(g.automorphisms()[0].restrict_to(&f5), Some(f5.from_i64(2)));
    assert_eq!(frobenius_galois_data(3, 2, &upoly(&f3, "u", &[-1, 0, 1])).unwrap_err(), Error::NotIrreducible);
}

#[test]
fn enumeration_examples() {
    let f3 = FieldDescriptor::prime(3).unwrap();
    let e: Vec<u64> = enumerate_field(&f3).unwrap().iter().map(|x| x.as_residue().unwrap()).collect();
    assert_eq!(e, vec![0, 1, 2]);
    assert_eq!(enumerate_field(&FieldDescriptor::finite(2, 2, "u").unwrap()).unwrap().len(), 4);
    assert_eq!(enumerate_field(&FieldDescriptor::rationals()).unwrap_err(), Error::InfiniteField);
    for fd in [f9(), FieldDescriptor::finite(5, 3, "w").unwrap()] {
        let all = enumerate_field(&fd).unwrap();
        for (i, x) in all.iter().enumerate() {
            assert_eq!(x.index().unwrap(), i as u128);
            assert_eq!(&fd.element_at(i as u128).unwrap(), x);
        }
    }
}

/// Exhaustive for every `p^d ≤ 125` that we can name.
#[test]
fn frobenius_exhaustive_small_fields() {
    for (p, d) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 1), (3, 2), (3, 3), (3, 4), (5, 1), (5, 2), (5, 3), (7, 2), (11, 2)] {
        let fd = FieldDescriptor::finite(p, d, "u").unwrap();
        let q = fd.cardinality().unwrap() as u64;
        for a in fd.enumerate().unwrap() {
            assert_eq!(a.pow(q), a, "F_{p}^{d}");
        }
        if d > 1 {
            let g = finite_galois_data(&fd).unwrap();
            let minpoly = &fd.extension_data().unwrap().minpoly;
            let roots: Vec<FieldElement> = g.automorphisms().to_vec();
            for (k, _) in roots.iter().enumerate() {
                let mut image: Vec<FieldElement> = roots.iter().map(|r| g.apply(k, r)).collect();
                image.sort();
                let mut sorted = roots.clone();
                sorted.sort();
                assert_eq!(image, sorted);
            }
            for r in &roots {
                let lifted: Vec<FieldElement> = minpoly.iter().map(|c| fd.embed(c).unwrap()).collect();
                assert!(dense::eval(&lifted, r).is_zero());
            }
        }
    }
}

fn triple(fd: &FieldDescriptor, seed: u64) -> [FieldElement; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    [fd.random_element(&mut rng), fd.random_element(&mut rng), fd.random_element(&mut rng)]
}

proptest! {
    #[test]
    fn field_axioms(seed in any::<u64>(), which in 0usize..6) {
        let fd = &catalog()[which];
        let [a, b, c] = triple(fd, seed);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(b.checked_div(&a).unwrap(), &b * &a.inv().unwrap());
        }
    }

    #[test]
    fn frobenius_is_additive(seed in any::<u64>()) {
        let fd = FieldDescriptor::finite(3, 3, "u").unwrap();
        let [a, b, _] = triple(&fd, seed);
        prop_assert_eq!((&a + &b).pow(3), &a.pow(3) + &b.pow(3));
    }
}
