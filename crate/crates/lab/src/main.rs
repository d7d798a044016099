use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use etale_core::fflab::{check_quintic_example, counterexample_fiber, polymap_image_with_budget, CounterexampleVariety};
use etale_core::field::finite_galois_data;
use etale_core::morphisms::{chart_image_membership, StandardEtaleChart};
use etale_core::poly::{real_root_isolate, sturm_count, sylvester_resultant};
use etale_core::setalg::{describe_univariate_rcf, is_nth_power_in_qp, membership, Context};
use etale_core::splitdetect::{
    build_splitting_ideal, complement_presentation, presentation_image_structured, SplittingInput, DEFAULT_BUDGET,
};
use etale_core::{FieldDescriptor, FieldElement, PolyMap};
use etale_lab::parse::{parse_combination, parse_context, parse_field_spec, parse_point, parse_poly, parse_vars};
use etale_lab::{run_suite, LabError, LabResult, Status, SUITES};
use num_rational::BigRational;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "etale-lab", version, about = "Exact algebra workbench and verification suites")]
struct Cli {
    /// Field: Q | Fp(p) | Fq(p,d,minpoly) | Q(alpha,minpoly) | FF(p,d,t)
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    /// Comma-separated variable names.
    #[arg(long, global = true, default_value = "x")]
    vars: String,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest number of point evaluations an exhaustive search may use.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u128,
    /// Also write the result as JSON to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
    /// Zero all timings so reports are byte-identical across runs.
    #[arg(long, global = true)]
    stable: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sylvester resultant of two polynomials in the first variable.
    Resultant { f: String, g: String },
    /// Real roots of a univariate rational polynomial.
    Sturm {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<String>,
    },
    /// Image of a polynomial map over a finite field.
    Image {
        #[arg(required = true)]
        outputs: Vec<String>,
    },
    /// Base points where f(x, b) splits over the degree-d extension and every
    /// simple root in the base field is a root of g(x, b).
    SplitDetect {
        f: String,
        g: String,
        #[arg(long, default_value = "x")]
        fiber: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
    },
    /// Chart image {b : f(r, b) = 0 != g(r, b)} and the image of its complement presentation.
    Complement {
        f: String,
        g: String,
        #[arg(long, default_value = "x")]
        fiber: String,
    },
    /// Membership of a point in a positive combination.
    Member {
        combination: String,
        #[arg(allow_hyphen_values = true)]
        point: Option<String>,
        /// ACF | RCF | PADIC(p)
        #[arg(long, default_value = "ACF")]
        context: String,
    },
    /// Is a nonzero rational an n-th power in Q_p?
    QpPower {
        #[arg(allow_hyphen_values = true)]
        a: String,
        n: u32,
        p: u64,
    },
    /// Checks on (x^2 + t)(x^3 + t) over F_4(t).
    QuinticCheck {
        #[arg(long, default_value_t = 8)]
        bound: usize,
    },
    /// Fiber V_alpha of yw = x^2 - beta w^2, z^2 = beta y^2 + t w^2 over a finite field.
    Fiber {
        #[arg(long, default_value = "0")]
        alpha: String,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
}

/// Exit 0 on success, 1 on a failed assertion, 2 on bad input or budget.
fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok((text, value, ok)) => {
            print!("{text}");
            if let Some(path) = &cli.json {
                if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&value).expect("json") + "\n") {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn pts(points: &[Vec<FieldElement>]) -> Vec<String> {
    points.iter().map(|p| format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))).collect()
}

fn rational(s: &str) -> LabResult<BigRational> {
    let q = FieldDescriptor::rationals();
    let p = parse_poly(s, &[] as &[&str], &q)?;
    Ok(p.constant_value().unwrap_or_else(|| q.zero()).as_rational().expect("rational").clone())
}

fn finite(fd: &FieldDescriptor) -> LabResult<()> {
    if fd.is_finite() {
        Ok(())
    } else {
        Err(LabError::Usage(format!("{fd} is not a finite field")))
    }
}

type Output = (String, Value, bool);

fn dispatch(cli: &Cli) -> LabResult<Output> {
    let fd = parse_field_spec(&cli.field)?;
    let vars = parse_vars(&cli.vars);
    match &cli.cmd {
        Cmd::Resultant { f, g } => {
            let var = vars.first().ok_or_else(|| LabError::Usage("no variables".into()))?;
            let (f, g) = (parse_poly(f, &vars, &fd)?, parse_poly(g, &vars, &fd)?);
            let r = sylvester_resultant(&f, &g, var)?;
            Ok((format!("{r}\n"), json!({"resultant": r.to_string(), "var": var}), true))
        }
        Cmd::Sturm { f, lo, hi } => {
            let f = parse_poly(f, &vars, &FieldDescriptor::rationals())?;
            let roots = real_root_isolate(&f)?;
            let mut text = format!("{} real roots\n", roots.len());
            for iv in &roots {
                text += &format!("  ({}, {})\n", iv.lo, iv.hi);
            }
            let intervals: Vec<Value> = roots.iter().map(|iv| json!([iv.lo.to_string(), iv.hi.to_string()])).collect();
            let mut value = json!({"roots": roots.len(), "intervals": intervals});
            if let (Some(lo), Some(hi)) = (lo, hi) {
                let n = sturm_count(&f, &rational(lo)?, &rational(hi)?)?;
                text += &format!("{n} in ({lo}, {hi})\n");
                value["window"] = json!({"lo": lo, "hi": hi, "count": n});
            }
            Ok((text, value, true))
        }
        Cmd::Image { outputs } => {
            finite(&fd)?;
            let outs = outputs.iter().map(|s| parse_poly(s, &vars, &fd)).collect::<LabResult<Vec<_>>>()?;
            let map = PolyMap::new(&fd, &vars, outs)?;
            let image = polymap_image_with_budget(&map, &fd, cli.budget)?;
            let shown = pts(image.points());
            Ok((format!("{} points\n{}\n", image.len(), shown.join("\n")), json!({"size": image.len(), "points": shown}), true))
        }
        Cmd::SplitDetect { f, g, fiber, degree } => {
            finite(&fd)?;
            let mut all = vec![fiber.clone()];
            all.extend(vars.iter().filter(|v| *v != fiber).cloned());
            let (fp, gp) = (parse_poly(f, &all, &fd)?, parse_poly(g, &all, &fd)?);
            let l = FieldDescriptor::extension_of_degree(&fd, *degree, "theta")?;
            let galois = finite_galois_data(&l)?;
            let input = SplittingInput::new(&fp, &gp, fiber, &all[1..], &galois)?;
            let pres = build_splitting_ideal(&input)?;
            let image = presentation_image_structured(&pres, &fd)?;
            let shown = pts(&image);
            Ok((
                format!("{} generators, {} fiber variables\n{} points\n{}\n", pres.generators.len(), pres.fiber_vars.len(), image.len(), shown.join("\n")),
                json!({"generators": pres.generators.len(), "fiber_vars": pres.fiber_vars, "size": image.len(), "points": shown}),
                true,
            ))
        }
        Cmd::Complement { f, g, fiber } => {
            finite(&fd)?;
            let base: Vec<String> = vars.iter().filter(|v| *v != fiber).cloned().collect();
            let mut all = vec![fiber.clone()];
            all.extend(base.iter().cloned());
            let chart = StandardEtaleChart::new(&base, fiber, parse_poly(f, &all, &fd)?, parse_poly(g, &all, &fd)?)?;
            let pres = complement_presentation(&chart, &fd)?;
            let f_image = presentation_image_structured(&pres, &fd)?;
            let mut e_image = Vec::new();
            for b in etale_core::splitdetect::grid(&fd, base.len())? {
                if chart_image_membership(&chart, &b, &fd)? {
                    e_image.push(b);
                }
            }
            let partition = e_image.iter().all(|b| !f_image.contains(b))
                && e_image.len() + f_image.len() == fd.cardinality().expect("finite").pow(base.len() as u32) as usize;
            let (es, fs) = (pts(&e_image), pts(&f_image));
            Ok((
                format!("E-image: {}\nF-image: {}\npartition: {partition}\n", es.join(" "), fs.join(" ")),
                json!({"e_image": es, "f_image": fs, "partition": partition}),
                partition,
            ))
        }
        Cmd::Member { combination, point, context } => {
            let ctx = parse_context(context)?;
            let pc = parse_combination(combination, ctx, &vars, &fd)?;
            let mut text = format!("{pc}\n");
            let mut value = json!({"combination": pc.to_string()});
            if let Some(point) = point {
                let pt = parse_point(point, &fd)?;
                let inside = membership(&pc, &pt)?;
                text += &format!("{inside}\n");
                value["member"] = json!(inside);
            }
            if ctx == Context::Rcf && vars.len() == 1 {
                let cells = describe_univariate_rcf(&pc)?;
                let shown: Vec<String> = cells.iter().map(|c| c.to_string()).collect();
                text += &format!("{}\n", if shown.is_empty() { "empty".to_string() } else { shown.join(" u ") });
                value["description"] = json!(shown);
            }
            Ok((text, value, true))
        }
        Cmd::QpPower { a, n, p } => {
            let a = rational(a)?;
            let yes = is_nth_power_in_qp(&a, *n, *p)?;
            Ok((format!("{yes}\n"), json!({"a": a.to_string(), "n": n, "p": p, "power": yes}), true))
        }
        Cmd::QuinticCheck { bound } => {
            let r = check_quintic_example(*bound, cli.seed)?;
            let mut text = String::new();
            let mut checks = Vec::new();
            for c in &r.checks {
                text += &format!("{} {}: {}\n", if c.passed { "PASS" } else { "FAIL" }, c.id, c.detail);
                checks.push(json!({"id": c.id, "passed": c.passed, "exact": c.exact, "detail": c.detail}));
            }
            Ok((text, json!({"bound": r.bound, "seed": r.seed, "checks": checks}), r.all_passed()))
        }
        Cmd::Fiber { alpha } => {
            finite(&fd)?;
            let cv = CounterexampleVariety::with_first_nonsquare(&fd)?;
            let a = parse_point(alpha, &fd)?.pop().expect("one element");
            let fiber = counterexample_fiber(&cv, &a)?;
            let shown = pts(fiber.points());
            Ok((
                format!("beta = {}\n{} points\n{}\n", cv.beta(), fiber.len(), shown.join("\n")),
                json!({"beta": cv.beta().to_string(), "alpha": a.to_string(), "size": fiber.len(), "points": shown}),
                true,
            ))
        }
        Cmd::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            let mut text = String::new();
            let mut ok = true;
            for name in names {
                let mut r = run_suite(name, cli.seed, cli.budget)?;
                if cli.stable {
                    r = r.without_timing();
                }
                for a in &r.assertions {
                    let tag = match a.status {
                        Status::Pass => "PASS",
                        Status::Fail => "FAIL",
                        Status::Info => "INFO",
                    };
                    text += &format!("{tag} {} ({} ms)\n", a.id, a.millis);
                }
                ok &= r.passed();
                reports.push(serde_json::to_value(&r)?);
            }
            let value = if reports.len() == 1 { reports.pop().expect("one") } else { Value::Array(reports) };
            Ok((text, value, ok))
        }
    }
}
