mod common;

use hamilton::expr::{expand, parse, Expr, ExprKind};
use hamilton::fueter::{evaluator, fueter_right_symbolic};
use hamilton::sampling::Sampler;
use hamilton::slice::{
    embed, is_slice_regular, series_eval, series_eval_list, slice_cr_residual, SliceConfig, SlicePoint, UnitImaginary,
};
use hamilton::{Mode, Quaternion, Unit};
use num_complex::Complex64;
use rand::Rng;

fn random_slice(s: &mut Sampler) -> UnitImaginary {
    let [a, b, c] = s.sphere_direction();
    UnitImaginary::float(a, b, c).unwrap()
}

#[test]
fn random_units_square_to_minus_one() {
    let mut s = Sampler::new(1);
    for _ in 0..100 {
        let u = embed(&random_slice(&mut s), &SlicePoint::float(0.0, 1.0)).unwrap();
        let sq = &u * &u;
        assert!(sq.checked_add(&Quaternion::float(1.0, 0.0, 0.0, 0.0)).unwrap().norm_f64() <= 1e-12);
        let real = embed(&random_slice(&mut s), &SlicePoint::float(0.7, 0.0)).unwrap();
        assert!(real.is_real());
    }
}

#[test]
fn monomials_with_left_coefficients_are_slice_regular() {
    let mut r = common::rng(21);
    let cfg = SliceConfig { radius: 0.9, ..SliceConfig::default() };
    for n in 0..=5u32 {
        for _ in 0..10 {
            let a = common::small_quaternion(&mut r);
            let e = Expr::prod(vec![Expr::constant(a), Expr::pow(Expr::var(), n)]);
            let report = is_slice_regular(&e, &cfg).unwrap();
            assert!(report.max_residual().unwrap() <= 1e-6, "{e}: {:?}", report.max_residual());
        }
    }
}

#[test]
fn conjugate_fails_everywhere() {
    let report = is_slice_regular(&parse("conj(q)").unwrap(), &SliceConfig::default()).unwrap();
    assert!(!report.is_regular());
    assert!(report.residuals.iter().all(|r| (r.norm - 2.0).abs() < 1e-8));
}

#[test]
fn q_is_slice_regular_but_not_fueter_regular() {
    assert_eq!(fueter_right_symbolic(&expand(&parse("q").unwrap()).unwrap()).to_string(), "-2");
    let f = evaluator(&parse("q").unwrap()).unwrap();
    let mut s = Sampler::new(3);
    for _ in 0..50 {
        let i = random_slice(&mut s);
        let p = SlicePoint::float(s.uniform(-0.7, 0.7), s.uniform(0.05, 0.7));
        assert!(slice_cr_residual(&f, &i, &p, 1e-5).unwrap().norm_f64() <= 1e-10);
    }
}

#[test]
fn residual_is_additive() {
    let mut r = common::rng(22);
    let mut s = Sampler::new(22);
    for _ in 0..50 {
        let a = common::random_polynomial_expr(&mut r);
        let b = common::random_polynomial_expr(&mut r);
        let (fa, fb) = (evaluator(&a).unwrap(), evaluator(&b).unwrap());
        let fs = evaluator(&Expr::sum(a, b)).unwrap();
        let i = random_slice(&mut s);
        let p = SlicePoint::float(s.uniform(-0.6, 0.6), s.uniform(0.05, 0.6));
        let ra = slice_cr_residual(&fa, &i, &p, 1e-5).unwrap();
        let rb = slice_cr_residual(&fb, &i, &p, 1e-5).unwrap();
        let rs = slice_cr_residual(&fs, &i, &p, 1e-5).unwrap();
        assert!(rs.checked_sub(&ra.checked_add(&rb).unwrap()).unwrap().norm_f64() <= 1e-9);
    }
}

/// Expression in `q` with constants in span{1, i}.
fn complex_expr(r: &mut rand_chacha::ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 {
        return if r.gen_bool(0.5) {
            Expr::var()
        } else {
            let c = common::small_quaternion(r);
            let c = Quaternion::new(c.w().clone(), c.x().clone(), hamilton::Scalar::zero(Mode::Exact), hamilton::Scalar::zero(Mode::Exact)).unwrap();
            Expr::constant(c)
        };
    }
    match r.gen_range(0..4) {
        0 => Expr::sum(complex_expr(r, depth - 1), complex_expr(r, depth - 1)),
        1 => Expr::prod(vec![complex_expr(r, depth - 1), complex_expr(r, depth - 1)]),
        2 => Expr::neg(complex_expr(r, depth - 1)),
        _ => Expr::pow(complex_expr(r, depth - 1), r.gen_range(0..=3)),
    }
}

fn complex_eval(e: &Expr, z: Complex64) -> Complex64 {
    match &e.kind {
        ExprKind::Const(c) => Complex64::new(c.w().to_f64(), c.x().to_f64()),
        ExprKind::VarQ => z,
        ExprKind::Neg(a) => -complex_eval(a, z),
        ExprKind::Sum(a, b) => complex_eval(a, z) + complex_eval(b, z),
        ExprKind::Prod(fs) => fs.iter().fold(Complex64::new(1.0, 0.0), |acc, f| acc * complex_eval(f, z)),
        ExprKind::Pow(a, n) => complex_eval(a, z).powu(*n),
        other => panic!("not a complex expression: {other:?}"),
    }
}

#[test]
fn axis_slice_matches_complex_cauchy_riemann() {
    let mut r = common::rng(23);
    let i = UnitImaginary::axis(Unit::I).unwrap();
    let h = 1e-5;
    for _ in 0..100 {
        let e = complex_expr(&mut r, 3);
        let f = evaluator(&e).unwrap();
        let (x, y) = (r.gen_range(-0.8..0.8), r.gen_range(0.05..0.8));
        let got = slice_cr_residual(&f, &i, &SlicePoint::float(x, y), h).unwrap();
        let g = |x: f64, y: f64| complex_eval(&e, Complex64::new(x, y));
        let fx = (g(x + h, y) - g(x - h, y)) / (2.0 * h);
        let fy = (g(x, y + h) - g(x, y - h)) / (2.0 * h);
        let expected = fx + fy * Complex64::i();
        let q = Quaternion::float(expected.re, expected.im, 0.0, 0.0);
        let scale = 1.0 + fx.norm() + fy.norm();
        assert!(got.checked_sub(&q).unwrap().norm_f64() <= 1e-9 * scale, "{e}");
        assert!(got.y().to_f64() == 0.0 && got.z().to_f64() == 0.0);
    }
}

#[test]
fn continuity_at_the_real_axis() {
    let f = evaluator(&parse("k*q^3 + q*j").unwrap()).unwrap();
    let mut s = Sampler::new(24);
    let on_axis = f(&Quaternion::float(0.4, 0.0, 0.0, 0.0)).unwrap();
    for _ in 0..10 {
        let i = random_slice(&mut s);
        for y in [1e-2, 1e-4, 1e-6] {
            let q = embed(&i, &SlicePoint::float(0.4, y)).unwrap();
            assert!(f(&q).unwrap().checked_sub(&on_axis).unwrap().norm_f64() < 10.0 * y);
        }
        let g = evaluator(&parse("k*q^3").unwrap()).unwrap();
        assert!(slice_cr_residual(&g, &i, &SlicePoint::float(0.4, 0.0), 1e-5).unwrap().norm_f64() <= 1e-6);
    }
}

#[test]
fn series_truncation_bounds_hold() {
    let mut r = common::rng(25);
    let mut s = Sampler::new(25);
    for _ in 0..30 {
        let coeffs: Vec<Quaternion> = (0..200).map(|_| common::unit_ball_coefficient(&mut r).to_float()).collect();
        let q = s.ball_point(0.5);
        let n = r.gen_range(0..30);
        let a = series_eval_list(&coeffs, &q, n, 1e-6).unwrap();
        let b = series_eval_list(&coeffs, &q, n + 10, 1e-6).unwrap();
        assert!(!a.divergent);
        let d = a.value.checked_sub(&b.value).unwrap().norm_f64();
        assert!(d <= a.truncation_bound.unwrap(), "n={n}: {d} > {:?}", a.truncation_bound);
    }
}

#[test]
fn exponential_of_a_unit_imaginary() {
    // exp(tI) = cos t + I sin t.
    let mut fact = vec![1.0_f64];
    for k in 1..=120 {
        fact.push(fact[k - 1] * k as f64);
    }
    let i = UnitImaginary::normalized([1.0, 2.0, -2.0]).unwrap();
    let t = 0.8;
    let q = embed(&i, &SlicePoint::float(0.0, t)).unwrap();
    let v = series_eval(|k| Quaternion::float(1.0 / fact[k], 0.0, 0.0, 0.0), &q, 40, 1e-12).unwrap();
    let expected = embed(&i, &SlicePoint::float(t.cos(), t.sin())).unwrap();
    assert!(v.value.checked_sub(&expected).unwrap().norm_f64() < 1e-14);
    assert!(v.within_tolerance);
}

#[test]
fn exact_slices_are_accepted() {
    let i = UnitImaginary::new(
        hamilton::Scalar::ratio(2, 3, Mode::Exact),
        hamilton::Scalar::ratio(2, 3, Mode::Exact),
        hamilton::Scalar::ratio(1, 3, Mode::Exact),
    )
    .unwrap();
    let f = evaluator(&parse("q^2").unwrap()).unwrap();
    assert!(slice_cr_residual(&f, &i, &SlicePoint::float(0.3, 0.4), 1e-5).unwrap().norm_f64() < 1e-6);
}
