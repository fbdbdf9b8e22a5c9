//! Acceptance suite: one PASS/FAIL line per criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::{Command, ExitCode};

use hamilton::expr::{expand, parse, CanonicalPoly, Expr};
use hamilton::fueter::{
    difference_quotient, evaluator, fueter_left_symbolic, fueter_numeric, fueter_right_symbolic, fueter_symbolic, is_regular,
    FueterConfig, Method, Side,
};
use hamilton::sampling::Sampler;
use hamilton::schemas;
use hamilton::slice::{is_slice_regular, SliceConfig};
use hamilton::structure::{
    bicomplex_table, division_check, ji_equals_k_zero_divisors, ji_plus_k_table, quaternion_table, triplet_case_analysis,
    triplet_general_obstruction, Conclusion, DivisionVerdict, Verdict,
};
use hamilton::{unit_table, Mode, Quaternion, Unit};
use num_rational::BigRational;
use serde_json::Value;

type Outcome = Result<(), String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ex(s: &str) -> CanonicalPoly {
    expand(&parse(s).unwrap()).unwrap()
}

fn unit_products() -> Outcome {
    // e_a e_b = sign · e_unit, written out by hand.
    const TABLE: [[(i8, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let t = unit_table();
    for a in 0..4 {
        for b in 0..4 {
            let (sign, u) = TABLE[a][b];
            check(t[a][b].unit.index() == u && t[a][b].negative == (sign < 0), || format!("entry ({a},{b})"))?;
            let ea = Quaternion::unit(Unit::ALL[a], Mode::Exact);
            let eb = Quaternion::unit(Unit::ALL[b], Mode::Exact);
            let mut expected = Quaternion::unit(Unit::ALL[u], Mode::Exact);
            if sign < 0 {
                expected = -&expected;
            }
            check(&ea * &eb == expected, || format!("product ({a},{b})"))?;
        }
    }
    let [i, j, k] = [Unit::I, Unit::J, Unit::K].map(|u| Quaternion::unit(u, Mode::Exact));
    check(&i * &j == k, || "ij".into())?;
    check(&j * &i == -&k, || "ji".into())?;
    check(&(&i * &j) * &k == Quaternion::exact(-1, 0, 0, 0), || "ijk".into())
}

fn product_forms() -> Outcome {
    let mut s = Sampler::new(2024);
    for n in 0..1000 {
        let (p, q) = (s.exact_quaternion(), s.exact_quaternion());
        let a = p.mul_components(&q).unwrap();
        check(a == p.mul_matrix(&q).unwrap() && a == p.mul_vector_form(&q).unwrap(), || format!("sample {n}: {p} * {q}"))?;
    }
    Ok(())
}

fn rel(a: &Quaternion, b: &Quaternion) -> f64 {
    a.checked_sub(b).unwrap().norm_f64() / a.norm_f64().max(b.norm_f64()).max(f64::MIN_POSITIVE)
}

fn field_axioms() -> Outcome {
    let mut s = Sampler::new(7);
    let one = Quaternion::one(Mode::Exact);
    for n in 0..1000 {
        let (a, b, c) = (s.exact_quaternion(), s.exact_quaternion(), s.exact_quaternion());
        check(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity, sample {n}"))?;
        check(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("left distributivity, sample {n}"))?;
        check(&(&a + &b) * &c == &(&a * &c) + &(&b * &c), || format!("right distributivity, sample {n}"))?;
        check((&a * &b).norm_squared() == &a.norm_squared() * &b.norm_squared(), || format!("norm, sample {n}"))?;
        if !a.is_zero() {
            check(&a * &a.inverse().unwrap() == one, || format!("inverse, sample {n}"))?;
        }
    }
    let mut s = Sampler::new(8);
    let one = Quaternion::one(Mode::Float);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let (a, b, c) = (s.float_quaternion(10.0), s.float_quaternion(10.0), s.float_quaternion(10.0));
        worst = worst.max(rel(&(&(&a * &b) * &c), &(&a * &(&b * &c))));
        worst = worst.max(rel(&(&a * &(&b + &c)), &(&(&a * &b) + &(&a * &c))));
        worst = worst.max(rel(&(&a * &a.inverse().unwrap()), &one));
        let lhs = (&a * &b).norm_squared().to_f64();
        let rhs = a.norm_squared().to_f64() * b.norm_squared().to_f64();
        worst = worst.max((lhs - rhs).abs() / rhs);
    }
    check(worst <= 1e-12, || format!("float relative error {worst:e}"))
}

fn triplet_reports() -> Outcome {
    let reports = triplet_case_analysis();
    check(reports.len() == 7, || format!("{} reports", reports.len()))?;
    for r in &reports {
        check(r.verdict != Verdict::Consistent, || format!("{} is consistent", r.case_label))?;
        r.replay().map_err(|e| format!("{}: {e:?}", r.case_label))?;
    }
    let general = triplet_general_obstruction();
    general.replay().map_err(|e| format!("general: {e:?}"))?;
    check(general.verdict == Verdict::NoRealSolution && general.summary().contains("γ^2 = -1"), || general.summary())?;
    let zd = ji_equals_k_zero_divisors();
    zd.replay().map_err(|e| format!("ji=+k: {e:?}"))?;
    let Conclusion::ZeroProduct { left, right } = &zd.conclusion else {
        return Err("ji=+k does not end in a zero product".into());
    };
    let (l, r) = (zd.rules.render_element(left), zd.rules.render_element(right));
    check(l == "1+k" && r == "1-k", || format!("factors {l}, {r}"))?;
    let product = zd.rules.mul(left, right).unwrap();
    check(product.iter().all(|c| c.is_zero()), || "product is not zero".into())
}

fn image_of_q() -> Outcome {
    let minus_two = CanonicalPoly::constant(Quaternion::exact(-2, 0, 0, 0));
    check(fueter_right_symbolic(&ex("q")) == minus_two, || "right image of q".into())?;
    check(fueter_left_symbolic(&ex("q")) == minus_two, || "left image of q".into())?;
    for c in ["1", "i", "2 - 3/4*j + k", "0"] {
        check(fueter_left_symbolic(&ex(c)).is_zero() && fueter_right_symbolic(&ex(c)).is_zero(), || format!("constant {c}"))?;
    }
    Ok(())
}

fn fueter_variables() -> Outcome {
    for s in ["q1 - i*q0", "q2 - j*q0", "q3 - k*q0"] {
        let image = fueter_left_symbolic(&ex(s));
        check(image.is_zero(), || format!("{s} maps to {image}"))?;
    }
    Ok(())
}

fn symbolic_numeric_agreement() -> Outcome {
    let mut r = common::rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let e = common::random_polynomial_expr(&mut r);
        let p = expand(&e).unwrap();
        let f = evaluator(&e).unwrap();
        let points: Vec<Quaternion> = (0..10).map(|_| common::ball_point(&mut r, 1.0)).collect();
        for side in [Side::Left, Side::Right] {
            let image = fueter_symbolic(&p, side).to_mode(Mode::Float).unwrap();
            for q in &points {
                let d = fueter_numeric(&f, side, q, 1e-5).unwrap().checked_sub(&image.eval(q).unwrap()).unwrap().norm_f64();
                worst = worst.max(d);
            }
        }
    }
    check(worst <= 1e-6, || format!("max difference {worst:e}"))
}

fn slice_contrast() -> Outcome {
    let cfg = SliceConfig::default();
    check(cfg.tol == 1e-6 && cfg.num_slices == 8 && cfg.num_points == 10, || "slice defaults".into())?;
    let q = parse("q").unwrap();
    let slice = is_slice_regular(&q, &cfg).unwrap();
    check(slice.is_regular() && slice.residuals.len() == 80, || "q is not slice-regular".into())?;
    for side in [Side::Left, Side::Right] {
        let f = is_regular(&q, side, Method::Symbolic, &FueterConfig::default()).unwrap();
        check(!f.is_regular(), || format!("q is {side:?} Fueter regular"))?;
    }
    let mut r = common::rng(21);
    for n in 0..=5u32 {
        for _ in 0..10 {
            let e = Expr::prod(vec![Expr::constant(common::small_quaternion(&mut r)), Expr::pow(Expr::var(), n)]);
            let rep = is_slice_regular(&e, &cfg).unwrap();
            check(rep.is_regular(), || format!("{e}: max residual {:e}", rep.max_residual().unwrap()))?;
        }
    }
    let conj = is_slice_regular(&parse("conj(q)").unwrap(), &cfg).unwrap();
    let min = conj.min_residual().unwrap();
    check(!conj.is_regular() && min >= 1.9, || format!("conj(q) minimum residual {min}"))
}

fn direction_dependence() -> Outcome {
    let f = evaluator(&parse("q^2").unwrap()).unwrap();
    let j = Quaternion::float(0.0, 0.0, 1.0, 0.0);
    let a = difference_quotient(&f, &j, &Quaternion::float(1.0, 0.0, 0.0, 0.0), 1e-6).unwrap();
    let b = difference_quotient(&f, &j, &Quaternion::float(0.0, 1.0, 0.0, 0.0), 1e-6).unwrap();
    let gap = a.checked_sub(&b).unwrap().norm_f64();
    check(gap >= 1.9, || format!("q^2 quotients differ by {gap}"))?;
    let mut r = common::rng(12);
    let mut s = Sampler::new(12);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let e = Expr::sum(
            Expr::constant(common::small_quaternion(&mut r)),
            Expr::prod(vec![Expr::var(), Expr::constant(common::unit_ball_coefficient(&mut r))]),
        );
        let f = evaluator(&e).unwrap();
        let q = s.ball_point(1.0);
        let quotients: Vec<Quaternion> =
            (0..20).map(|_| difference_quotient(&f, &q, &s.ball_point(1.0), 1e-6).unwrap()).collect();
        for x in &quotients {
            for y in &quotients {
                worst = worst.max(x.checked_sub(y).unwrap().norm_f64());
            }
        }
    }
    check(worst <= 1e-6, || format!("affine quotients differ by {worst:e}"))
}

fn division_certification() -> Outcome {
    let v = division_check(&quaternion_table(), 100, 42).map_err(|e| e.to_string())?;
    let DivisionVerdict::Certified { samples, .. } = v else {
        return Err("quaternion table not certified".into());
    };
    for (a, det) in &samples {
        let n2: BigRational = a.iter().map(|x| x * x).sum();
        check(*det == &n2 * &n2, || format!("det for {a:?}"))?;
    }
    let one = BigRational::from_integer(1.into());
    let zero = BigRational::from_integer(0.into());
    let witness = DivisionVerdict::ZeroDivisorWitness(
        vec![one.clone(), zero.clone(), zero.clone(), one.clone()],
        vec![one.clone(), zero.clone(), zero, -one],
    );
    for (name, t) in [("ji=+k", ji_plus_k_table()), ("bicomplex", bicomplex_table())] {
        let v = division_check(&t, 100, 42).map_err(|e| e.to_string())?;
        check(v == witness, || format!("{name}: {v:?}"))?;
    }
    Ok(())
}

fn hamilton(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_hamilton")).args(args).output().expect("binary runs")
}

fn validate(schema: &str, v: &Value) -> Outcome {
    let schema: Value = serde_json::from_str(schema).unwrap();
    let validator = jsonschema::validator_for(&schema).map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator.iter_errors(v).map(|e| e.to_string()).collect();
    check(errors.is_empty(), || errors.join("; "))
}

fn cli_contract() -> Outcome {
    let o = hamilton(&["check", "q", "--mode", "fueter", "--side", "right", "--method", "symbolic"]);
    let text = String::from_utf8_lossy(&o.stdout).to_string();
    check(o.status.code() == Some(1) && text.contains("-2"), || format!("fueter check: {:?} {text}", o.status.code()))?;
    let o = hamilton(&["check", "q", "--mode", "slice"]);
    check(o.status.code() == Some(0), || format!("slice check: {:?}", o.status.code()))?;
    let cases: [(&[&str], &str); 6] = [
        (&["check", "q", "--mode", "fueter", "--side", "right", "--format", "json"], schemas::REGULARITY_REPORT),
        (&["check", "q", "--mode", "slice", "--format", "json"], schemas::REGULARITY_REPORT),
        (&["check", "q^2", "--method", "numeric", "--format", "json"], schemas::REGULARITY_REPORT),
        (&["eval", "i*j", "--format", "json"], schemas::QUATERNION),
        (&["series", "--family", "exp", "--at", "0,1,0,0", "--format", "json"], schemas::SERIES_VALUE),
        (&["structure", "general", "--format", "json"], schemas::CONTRADICTION_REPORT),
    ];
    for (args, schema) in cases {
        let (a, b) = (hamilton(args), hamilton(args));
        check(a.stdout == b.stdout, || format!("{args:?} differs between runs"))?;
        let v: Value = serde_json::from_slice(&a.stdout).map_err(|e| format!("{args:?}: {e}"))?;
        let v = if v.is_array() { v[0].clone() } else { v };
        validate(schema, &v).map_err(|e| format!("{args:?}: {e}"))?;
    }
    let a = hamilton(&["structure", "bicomplex", "--format", "json"]);
    check(a.stdout == hamilton(&["structure", "bicomplex", "--format", "json"]).stdout, || "structure output differs".into())?;
    let v: Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    validate(schemas::STRUCTURE_TABLE, &v["table"])?;
    validate(schemas::DIVISION_REPORT, &v["division"])
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("unit table", unit_products),
        ("product-form equivalence", product_forms),
        ("field axioms", field_axioms),
        ("triplet contradictions", triplet_reports),
        ("Fueter image of q", image_of_q),
        ("Fueter variables", fueter_variables),
        ("symbolic-numeric agreement", symbolic_numeric_agreement),
        ("slice contrast", slice_contrast),
        ("direction dependence", direction_dependence),
        ("division certification", division_certification),
        ("CLI contract", cli_contract),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", n + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
