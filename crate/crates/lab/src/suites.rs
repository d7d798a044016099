//! Verification suites, one per acceptance criterion.

use std::time::Instant;

use etale_core::field::{dense, finite_galois_data};
use etale_core::fflab::{
    check_closure_laws, check_quintic_example, closure_catalog, counterexample_fiber, fiber_census,
    CounterexampleVariety, QUINTIC_SAMPLES,
};
use etale_core::morphisms::{chart_image_membership, random_chart, verify_sylvester_jacobian};
use etale_core::poly::{gcd_univariate, real_root_isolate, sturm_count, sylvester_resultant};
use etale_core::setalg::is_nth_power_in_qp;
use etale_core::splitdetect::{
    build_splitting_ideal, complement_presentation, grid, presentation_image_structured,
    presentation_image_with_budget, random_splitting_input, splitting_condition_oracle, Point,
};
use etale_core::{FieldDescriptor, FieldElement, MultiPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{LabError, LabResult};
use crate::oracles;
use crate::report::{Assertion, Status, SuiteReport};

/// Suite names in criterion order.
pub const SUITES: [&str; 10] = [
    "sylvester",
    "splitdet",
    "complement",
    "fibers",
    "quintic",
    "padics",
    "resultants",
    "sturm",
    "closure",
    "fields",
];

/// `(p, m, d, n)`: base field `𝔽_p`, fiber degree, `[L : K]`, base dimension.
pub const SPLITDET_CONFIGS: [(u64, usize, usize, usize); 7] =
    [(2, 2, 2, 1), (3, 2, 2, 1), (3, 2, 2, 2), (3, 3, 2, 1), (5, 2, 2, 1), (2, 2, 3, 1), (3, 2, 3, 1)];
pub const SPLITDET_SEEDS: u64 = 25;
pub const COMPLEMENT_SEEDS: u64 = 5;
pub const FIBER_FIELDS: [u64; 4] = [3, 7, 11, 19];
pub const QUINTIC_BOUND: usize = 8;
pub const PADIC_TRIPLES: usize = 500;
pub const Q_PAIRS: usize = 200;
pub const STURM_CATALOG: usize = 100;
pub const FIELD_TRIPLES: u64 = 1000;

/// Criterion number (1-based) of a suite.
pub fn criterion(name: &str) -> Option<usize> {
    SUITES.iter().position(|s| *s == name).map(|i| i + 1)
}

fn sub_seed(seed: u64, a: u64, b: u64) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(a.wrapping_mul(1_000_003)).wrapping_add(b)
}

fn point_str(p: &[FieldElement]) -> Value {
    Value::Array(p.iter().map(|x| Value::String(x.to_string())).collect())
}

struct Outcome {
    status: Status,
    witness: Option<Value>,
    counts: Option<Value>,
}

impl Outcome {
    fn check(ok: bool, witness: Option<Value>, counts: Value) -> Self {
        Outcome { status: if ok { Status::Pass } else { Status::Fail }, witness: if ok { None } else { witness }, counts: Some(counts) }
    }

    fn info(counts: Value) -> Self {
        Outcome { status: Status::Info, witness: None, counts: Some(counts) }
    }
}

fn run(report: &mut SuiteReport, id: &str, anchor: &str, f: impl FnOnce() -> LabResult<Outcome>) -> LabResult<()> {
    let start = Instant::now();
    let out = f()?;
    report.assertions.push(Assertion {
        id: id.to_string(),
        anchor: anchor.to_string(),
        status: out.status,
        witness: out.witness,
        counts: out.counts,
        millis: start.elapsed().as_millis(),
    });
    Ok(())
}

/// Run a named suite. Unknown names are [`LabError::UnknownSuite`]; a
/// computation larger than `budget` is [`LabError::BudgetExceeded`].
pub fn run_suite(name: &str, seed: u64, budget: u128) -> LabResult<SuiteReport> {
    let mut report = SuiteReport::new(name, seed, budget);
    match name {
        "sylvester" => sylvester(&mut report)?,
        "splitdet" => splitdet(&mut report, seed, budget)?,
        "complement" => complement(&mut report, seed)?,
        "fibers" => fibers(&mut report)?,
        "quintic" => quintic(&mut report, seed)?,
        "padics" => padics(&mut report, seed)?,
        "resultants" => resultants(&mut report, seed)?,
        "sturm" => sturm(&mut report, seed)?,
        "closure" => closure(&mut report)?,
        "fields" => fields(&mut report, seed)?,
        other => return Err(LabError::UnknownSuite(other.to_string())),
    }
    Ok(report)
}

fn sylvester(report: &mut SuiteReport) -> LabResult<()> {
    for total in 2..=6 {
        for n in 1..total {
            let m = total - n;
            run(report, &format!("sylvester/{n}x{m}"), "det Jac of (g, h) -> gh equals Res(g, h) up to sign", || {
                let r = verify_sylvester_jacobian(n, m, 6, 0)?;
                let ok = r.equal_up_to_sign && r.spot_checks_passed == r.spot_checks;
                Ok(Outcome::check(
                    ok,
                    Some(json!({"jacobian": r.jacobian.to_string(), "resultant": r.resultant.to_string()})),
                    json!({"sign": r.sign, "spot_checks": r.spot_checks, "spot_checks_passed": r.spot_checks_passed}),
                ))
            })?;
        }
    }
    Ok(())
}

fn splitdet(report: &mut SuiteReport, seed: u64, budget: u128) -> LabResult<()> {
    for (ci, &(p, m, d, n)) in SPLITDET_CONFIGS.iter().enumerate() {
        let id = format!("splitdet/p{p}-m{m}-d{d}-n{n}");
        run(report, &id, "b lies in the image iff f(x, b) splits over L and every simple root in K is a root of g(x, b)", || {
            let fd = FieldDescriptor::prime(p)?;
            let (mut points, mut in_image, mut mismatches) = (0usize, 0usize, 0usize);
            let mut witness = None;
            for s in 0..SPLITDET_SEEDS {
                let inst_seed = sub_seed(seed, ci as u64, s);
                let input = random_splitting_input(p, m, d, n, inst_seed)?;
                let pres = build_splitting_ideal(&input)?;
                let exhaustive: Vec<Point> = presentation_image_with_budget(&pres, &fd, budget)?;
                let structured: Vec<Point> = presentation_image_structured(&pres, &fd)?;
                for b in grid(&fd, n)? {
                    let truth = oracles::splitting_oracle(&input, &b)?;
                    let core = splitting_condition_oracle(&input, &b)?;
                    let ex = exhaustive.contains(&b);
                    let st = structured.contains(&b);
                    points += 1;
                    in_image += truth as usize;
                    if core != truth || ex != truth || st != truth {
                        mismatches += 1;
                        witness.get_or_insert_with(|| {
                            json!({"seed": inst_seed, "b": point_str(&b), "oracle": truth, "core": core,
                                   "exhaustive": ex, "structured": st,
                                   "f": input.f().to_string(), "g": input.g().to_string()})
                        });
                    }
                }
            }
            Ok(Outcome::check(
                mismatches == 0,
                witness,
                json!({"instances": SPLITDET_SEEDS, "points": points, "in_image": in_image, "mismatches": mismatches}),
            ))
        })?;
    }
    Ok(())
}

fn complement(report: &mut SuiteReport, seed: u64) -> LabResult<()> {
    for p in [3u64, 5] {
        for m in [2usize, 3] {
            let id = format!("complement/p{p}-m{m}");
            run(report, &id, "the complement of an etale image over a bounded field is a finite image", || {
                let fd = FieldDescriptor::prime(p)?;
                let (mut e_count, mut f_count, mut bad) = (0usize, 0usize, 0usize);
                let mut witness = None;
                for s in 0..COMPLEMENT_SEEDS {
                    let chart_seed = sub_seed(seed, p * 10 + m as u64, s);
                    let chart = random_chart(&fd, 1, m, chart_seed)?;
                    let pres = complement_presentation(&chart, &fd)?;
                    let f_image = presentation_image_structured(&pres, &fd)?;
                    for b in grid(&fd, 1)? {
                        let e = chart_image_membership(&chart, &b, &fd)?;
                        let f = f_image.contains(&b);
                        e_count += e as usize;
                        f_count += f as usize;
                        if e == f {
                            bad += 1;
                            witness.get_or_insert_with(|| {
                                json!({"seed": chart_seed, "b": point_str(&b), "in_e": e, "in_f": f,
                                       "f": chart.f().to_string(), "g": chart.g().to_string()})
                            });
                        }
                    }
                }
                Ok(Outcome::check(
                    bad == 0,
                    witness,
                    json!({"charts": COMPLEMENT_SEEDS, "e_points": e_count, "f_points": f_count, "violations": bad}),
                ))
            })?;
        }
    }
    Ok(())
}

fn fibers(report: &mut SuiteReport) -> LabResult<()> {
    for q in FIBER_FIELDS {
        run(report, &format!("fibers/q{q}/zero-fiber"), "V_0(K) is empty", || {
            let fd = FieldDescriptor::prime(q)?;
            let cv = CounterexampleVariety::with_first_nonsquare(&fd)?;
            let beta = cv.beta().as_residue().expect("prime field");
            let beta_nonsquare = (0..q).all(|x| x * x % q != beta);
            let fiber = counterexample_fiber(&cv, &fd.zero())?;
            let raw = oracles::fiber_count(q, beta, 0);
            Ok(Outcome::check(
                beta_nonsquare && fiber.is_empty() && raw == 0,
                fiber.points().first().map(|pt| json!({"beta": beta, "point": point_str(pt)})),
                json!({"beta": beta, "beta_nonsquare": beta_nonsquare, "points": fiber.len(), "oracle_points": raw}),
            ))
        })?;
        run(report, &format!("fibers/q{q}/census"), "fibers V_alpha over the base line", || {
            let fd = FieldDescriptor::prime(q)?;
            let cv = CounterexampleVariety::with_first_nonsquare(&fd)?;
            let c = fiber_census(&cv)?;
            Ok(Outcome::info(json!({"q": q, "nonempty": c.nonempty, "total": c.total})))
        })?;
    }
    Ok(())
}

fn quintic(report: &mut SuiteReport, seed: u64) -> LabResult<()> {
    let start = Instant::now();
    let r = check_quintic_example(QUINTIC_BOUND, seed)?;
    let millis = start.elapsed().as_millis();
    for c in &r.checks {
        let status = if c.passed { Status::Pass } else { Status::Fail };
        report.assertions.push(Assertion {
            id: format!("quintic/{}", c.id),
            anchor: "f(x) = (x^2 + t)(x^3 + t) over F_4(t)".into(),
            status,
            witness: (!c.passed).then(|| Value::String(c.detail.clone())),
            counts: Some(json!({"exact": c.exact, "detail": c.detail, "samples": QUINTIC_SAMPLES})),
            millis: if report.assertions.is_empty() { millis } else { 0 },
        });
    }
    Ok(())
}

fn random_rational(rng: &mut ChaCha8Rng, p: u64) -> BigRational {
    let mut num = BigInt::from(rng.gen_range(1i64..=2000));
    let mut den = BigInt::from(rng.gen_range(1i64..=50));
    for _ in 0..rng.gen_range(0..4) {
        if rng.gen_bool(0.5) {
            num *= p;
        } else {
            den *= p;
        }
    }
    if rng.gen_bool(0.5) {
        num = -num;
    }
    BigRational::new(num, den)
}

fn padics(report: &mut SuiteReport, seed: u64) -> LabResult<()> {
    run(report, "padics/oracle", "n-th powers in Q_p via Hensel lifting", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];
        let (mut powers, mut mismatches) = (0usize, 0usize);
        let mut witness = None;
        for _ in 0..PADIC_TRIPLES {
            let p = PRIMES[rng.gen_range(0..PRIMES.len())];
            let n = rng.gen_range(1u32..=6);
            // half the time plant an n-th power times a small unit
            let mut a = random_rational(&mut rng, p);
            if rng.gen_bool(0.5) {
                let base = random_rational(&mut rng, p);
                a = num_traits::pow(base, n as usize) * BigRational::from_integer(BigInt::from(rng.gen_range(1i64..=3)));
            }
            let got = is_nth_power_in_qp(&a, n, p)?;
            let want = oracles::qp_power_oracle(&a, n, p);
            powers += want as usize;
            if got != want {
                mismatches += 1;
                witness.get_or_insert_with(|| json!({"a": a.to_string(), "n": n, "p": p, "got": got, "oracle": want}));
            }
        }
        Ok(Outcome::check(mismatches == 0, witness, json!({"triples": PADIC_TRIPLES, "powers": powers, "mismatches": mismatches})))
    })
}

/// Monic polynomials of degree 1..=3 over `𝔽_p`, dense low-first.
fn monic_upto3(p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for deg in 1..=3u32 {
        for idx in 0..p.pow(deg) {
            let mut c: Vec<u64> = (0..deg).map(|k| idx / p.pow(k) % p).collect();
            c.push(1);
            out.push(c);
        }
    }
    out
}

fn q_poly(coeffs: &[BigRational]) -> LabResult<MultiPoly> {
    let q = FieldDescriptor::rationals();
    let cs: Vec<FieldElement> = coeffs.iter().map(|c| q.from_rational(c)).collect::<etale_core::Result<_>>()?;
    Ok(MultiPoly::from_dense(&q, &["x"], "x", &cs)?)
}

fn resultants(report: &mut SuiteReport, seed: u64) -> LabResult<()> {
    for p in [2u64, 3] {
        run(report, &format!("resultants/F{p}"), "the resultant vanishes iff the polynomials share a root", || {
            let fd = FieldDescriptor::prime(p)?;
            let big = FieldDescriptor::finite(p, 6, "w")?;
            let elems = big.enumerate()?;
            let polys = monic_upto3(p);
            let roots: Vec<Vec<usize>> = polys.iter().map(|f| oracles::root_set(f, &big, &elems)).collect();
            let mp: Vec<MultiPoly> = polys
                .iter()
                .map(|c| {
                    let cs: Vec<FieldElement> = c.iter().map(|&k| fd.from_u64(k)).collect();
                    MultiPoly::from_dense(&fd, &["x"], "x", &cs)
                })
                .collect::<etale_core::Result<_>>()?;
            let (mut pairs, mut common, mut mismatches) = (0usize, 0usize, 0usize);
            let mut witness = None;
            for i in 0..polys.len() {
                for j in 0..polys.len() {
                    let share = roots[i].iter().any(|r| roots[j].contains(r));
                    let res_zero = sylvester_resultant(&mp[i], &mp[j], "x")?.is_zero();
                    let gcd_nontrivial = gcd_univariate(&mp[i], &mp[j], "x")?.total_degree() > 0;
                    pairs += 1;
                    common += share as usize;
                    if res_zero != share || gcd_nontrivial != share {
                        mismatches += 1;
                        witness.get_or_insert_with(|| json!({"f": mp[i].to_string(), "g": mp[j].to_string(), "share_root": share, "res_zero": res_zero, "gcd_nontrivial": gcd_nontrivial}));
                    }
                }
            }
            Ok(Outcome::check(mismatches == 0, witness, json!({"pairs": pairs, "common_root": common, "mismatches": mismatches})))
        })?;
    }
    run(report, "resultants/Q", "the resultant vanishes iff the polynomials share a root", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let (mut planted, mut mismatches) = (0usize, 0usize);
        let mut witness = None;
        for k in 0..Q_PAIRS {
            // f: linear factors with roots among a/3, a ≥ 0; g: roots among -b/2 - 1/7
            // (never a/3) and optionally x^2 + c; a planted common factor x - s
            // makes the pair non-coprime.
            let mut f = vec![r(rng.gen_range(1..=5), 1)];
            for _ in 0..rng.gen_range(0..=3) {
                f = oracles::qmul(&f, &[-r(rng.gen_range(0..=9), 3), r(1, 1)]);
            }
            let mut g = vec![r(rng.gen_range(1..=5), 1)];
            for _ in 0..rng.gen_range(0..=2) {
                g = oracles::qmul(&g, &[r(rng.gen_range(0..=9), 2) + r(1, 7), r(1, 1)]);
            }
            if rng.gen_bool(0.5) {
                g = oracles::qmul(&g, &[r(rng.gen_range(1..=9), 1), r(0, 1), r(1, 1)]);
            }
            let plant = k % 2 == 0;
            if plant {
                let s = r(rng.gen_range(-9..=9), rng.gen_range(1..=4));
                f = oracles::qmul(&f, &[-s.clone(), r(1, 1)]);
                g = oracles::qmul(&g, &[-s, r(1, 1)]);
                planted += 1;
            } else if f.len() == 1 && g.len() == 1 {
                f = oracles::qmul(&f, &[r(-1, 1), r(1, 1)]);
            }
            let (fp, gp) = (q_poly(&f)?, q_poly(&g)?);
            if fp.total_degree() == 0 && gp.total_degree() == 0 {
                continue;
            }
            let res_zero = sylvester_resultant(&fp, &gp, "x")?.is_zero();
            let gcd_nontrivial = gcd_univariate(&fp, &gp, "x")?.total_degree() > 0;
            if res_zero != plant || gcd_nontrivial != plant {
                mismatches += 1;
                witness.get_or_insert_with(|| json!({"f": fp.to_string(), "g": gp.to_string(), "planted": plant, "res_zero": res_zero}));
            }
        }
        Ok(Outcome::check(mismatches == 0, witness, json!({"pairs": Q_PAIRS, "planted": planted, "mismatches": mismatches})))
    })
}

fn sturm(report: &mut SuiteReport, seed: u64) -> LabResult<()> {
    run(report, "sturm/catalog", "Sturm counts agree with isolation and with planted roots", || {
        let catalog = oracles::planted_catalog(STURM_CATALOG, seed);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let (lo_w, hi_w) = (r(-9, 4), r(11, 5));
        let mut mismatches = 0usize;
        let mut witness = None;
        let mut total_roots = 0usize;
        for pp in &catalog {
            let f = q_poly(&pp.coeffs)?;
            let lead = pp.coeffs.last().expect("nonempty").abs();
            let bound: BigRational = BigRational::one() + pp.coeffs.iter().map(|c| c.abs()).sum::<BigRational>() / lead;
            let want = pp.distinct_real_roots();
            total_roots += want;
            let isolated = real_root_isolate(&f)?;
            let global = sturm_count(&f, &-bound.clone(), &bound)?;
            let window = sturm_count(&f, &lo_w, &hi_w)?;
            let per_interval_ok = isolated.iter().all(|iv| sturm_count(&f, &iv.lo, &iv.hi).ok() == Some(1));
            let rational_ok = pp.rational_roots.iter().all(|x| isolated.iter().filter(|iv| iv.contains(x)).count() == 1);
            let ok = isolated.len() == want
                && global == want
                && window == pp.roots_in(&lo_w, &hi_w)
                && per_interval_ok
                && rational_ok;
            if !ok {
                mismatches += 1;
                witness.get_or_insert_with(|| json!({"f": f.to_string(), "planted": want, "isolated": isolated.len(), "sturm": global, "window": window}));
            }
        }
        Ok(Outcome::check(mismatches == 0, witness, json!({"polys": catalog.len(), "roots": total_roots, "mismatches": mismatches})))
    })
}

fn closure(report: &mut SuiteReport) -> LabResult<()> {
    run(report, "closure/F3", "finite images are closed under finite intersections and unions", || {
        let fd = FieldDescriptor::prime(3)?;
        let catalog = closure_catalog()?;
        let checks = check_closure_laws(&catalog, &fd)?;
        let failing: Vec<_> = checks.iter().filter(|c| !c.product_ok || !c.union_ok).collect();
        let witness = failing.first().map(|c| {
            json!({"pair": c.index, "product_ok": c.product_ok, "union_ok": c.union_ok,
                   "b": c.witness.as_deref().map(point_str)})
        });
        Ok(Outcome::check(failing.is_empty(), witness, json!({"pairs": checks.len(), "failing": failing.len()})))
    })
}

fn field_catalog() -> LabResult<Vec<(&'static str, FieldDescriptor)>> {
    let q = FieldDescriptor::rationals();
    let f4 = FieldDescriptor::finite(2, 2, "u")?;
    Ok(vec![
        ("Q", q.clone()),
        ("F7", FieldDescriptor::prime(7)?),
        ("F9", FieldDescriptor::finite(3, 2, "u")?),
        ("F16-tower", FieldDescriptor::extension_of_degree(&f4, 2, "v")?),
        ("Q(i)", FieldDescriptor::extension(&q, vec![q.one(), q.zero(), q.one()], "i")?),
        ("F2(t)", FieldDescriptor::function_field(&FieldDescriptor::prime(2)?, "t")?),
        ("F4(t)", FieldDescriptor::function_field(&f4, "t")?),
    ])
}

/// Every `(p, d)` with `p^d ≤ 125`.
pub fn small_prime_powers() -> Vec<(u64, usize)> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11] {
        let mut d = 1;
        while p.pow(d as u32) <= 125 {
            out.push((p, d));
            d += 1;
        }
    }
    out
}

fn fields(report: &mut SuiteReport, seed: u64) -> LabResult<()> {
    for (fi, (label, fd)) in field_catalog()?.iter().enumerate() {
        run(report, &format!("fields/axioms/{label}"), "field axioms", || {
            let mut rng = ChaCha8Rng::seed_from_u64(sub_seed(seed, fi as u64, 0));
            let p = fd.characteristic();
            let mut failures = 0usize;
            let mut witness = None;
            for _ in 0..FIELD_TRIPLES {
                let (a, b, c) = (fd.random_element(&mut rng), fd.random_element(&mut rng), fd.random_element(&mut rng));
                let mut ok = &(&a + &b) + &c == &a + &(&b + &c)
                    && &(&a * &b) * &c == &a * &(&b * &c)
                    && &a + &b == &b + &a
                    && &a * &b == &b * &a
                    && &a * &(&b + &c) == &(&a * &b) + &(&a * &c)
                    && (&a - &a).is_zero()
                    && (&a + &fd.zero()) == a
                    && (&a * &fd.one()) == a;
                if !a.is_zero() {
                    ok &= (&a * &a.inv()?).is_one();
                }
                if p != 0 {
                    ok &= (&a + &b).pow(p) == &a.pow(p) + &b.pow(p) && (&a * &b).pow(p) == &a.pow(p) * &b.pow(p);
                }
                if !ok {
                    failures += 1;
                    witness.get_or_insert_with(|| json!([a.to_string(), b.to_string(), c.to_string()]));
                }
            }
            Ok(Outcome::check(failures == 0, witness, json!({"triples": FIELD_TRIPLES, "failures": failures})))
        })?;
    }
    run(report, "fields/frobenius", "Frobenius generates the Galois group of F_{p^d}/F_p", || {
        let mut failures = Vec::new();
        let configs = small_prime_powers();
        for &(p, d) in &configs {
            let fd = FieldDescriptor::finite(p, d, "u")?;
            let q = fd.cardinality().expect("finite") as u64;
            let elems = fd.enumerate()?;
            let frob: Vec<FieldElement> = elems.iter().map(|a| a.pow(p)).collect();
            let mut ok = elems.iter().all(|a| a.pow(q) == *a);
            let fixed = elems.iter().zip(&frob).filter(|(a, b)| a == b).count();
            ok &= fixed as u64 == p;
            let mut sorted = frob.clone();
            sorted.sort();
            sorted.dedup();
            ok &= sorted.len() == elems.len();
            if d > 1 {
                let g = finite_galois_data(&fd)?;
                let minpoly: Vec<FieldElement> =
                    fd.extension_data().expect("extension").minpoly.iter().map(|c| fd.embed(c)).collect::<etale_core::Result<_>>()?;
                let roots = g.automorphisms().to_vec();
                ok &= roots.iter().all(|r| dense::eval(&minpoly, r).is_zero());
                let mut distinct = roots.clone();
                distinct.sort();
                distinct.dedup();
                ok &= distinct.len() == d;
                ok &= (0..d).all(|k| elems.iter().all(|x| g.apply(k, x) == x.pow(p.pow(k as u32))));
            }
            if !ok {
                failures.push(format!("F_{p}^{d}"));
            }
        }
        Ok(Outcome::check(failures.is_empty(), Some(json!(failures)), json!({"fields": configs.len(), "failures": failures.len()})))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("bogus", 0, 1), Err(LabError::UnknownSuite(_))));
    }

    #[test]
    fn criteria_numbering() {
        assert_eq!(criterion("sylvester"), Some(1));
        assert_eq!(criterion("fields"), Some(10));
        assert_eq!(criterion("bogus"), None);
    }

    #[test]
    fn monic_enumeration_size() {
        assert_eq!(monic_upto3(2).len(), 2 + 4 + 8);
        assert_eq!(monic_upto3(3).len(), 3 + 9 + 27);
    }

    #[test]
    fn prime_powers_up_to_125() {
        let pp = small_prime_powers();
        assert!(pp.contains(&(2, 6)) && pp.contains(&(5, 3)) && pp.contains(&(11, 2)));
        assert!(!pp.contains(&(2, 7)) && !pp.contains(&(3, 5)));
    }

    #[test]
    fn splitdet_budget_is_enforced() {
        assert!(matches!(run_suite("splitdet", 0, 10), Err(LabError::BudgetExceeded(_))));
    }

    #[test]
    fn closure_suite_passes() {
        let r = run_suite("closure", 0, u128::MAX).unwrap();
        assert!(r.passed());
    }
}
