//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use hamilton::expr::Expr;
use hamilton::{Mode, Quaternion, Scalar};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> BigRational {
    BigRational::new(rng.gen_range(-num..=num).into(), rng.gen_range(1..=den).into())
}

pub fn small_quaternion(rng: &mut ChaCha8Rng) -> Quaternion {
    let c: [Scalar; 4] = std::array::from_fn(|_| Scalar::Exact(small_rational(rng, 5, 4)));
    Quaternion::from_components(c).unwrap()
}

/// Components in [-1/2, 1/2], so the norm is at most 1.
pub fn unit_ball_coefficient(rng: &mut ChaCha8Rng) -> Quaternion {
    let c: [Scalar; 4] = std::array::from_fn(|_| {
        let n: i64 = rng.gen_range(-4..=4);
        Scalar::Exact(BigRational::new(n.into(), 8.into()))
    });
    Quaternion::from_components(c).unwrap()
}

/// Random expression tree over every node kind except series, with total
/// degree kept small.
pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..4) {
            0 => Expr::constant(small_quaternion(rng)),
            1 => Expr::component(rng.gen_range(0..4)),
            _ => Expr::var(),
        };
    }
    match rng.gen_range(0..7) {
        0 => Expr::conj(random_expr(rng, depth - 1)),
        1 => Expr::neg(random_expr(rng, depth - 1)),
        2 | 3 => Expr::sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1)),
        4 | 5 => {
            let n = rng.gen_range(2..=3);
            Expr::prod((0..n).map(|_| random_expr(rng, depth - 1)).collect())
        }
        _ => Expr::pow(random_expr(rng, depth - 1), rng.gen_range(0..=2)),
    }
}

/// Sum of 1 to 4 terms; each term is a product of at most four factors from
/// `q, conj(q), q0..q3` with a coefficient of norm at most 1 inserted at a
/// random position. Total degree is at most 4.
pub fn random_polynomial_expr(rng: &mut ChaCha8Rng) -> Expr {
    let terms = rng.gen_range(1..=4);
    let mut acc: Option<Expr> = None;
    for _ in 0..terms {
        let degree = rng.gen_range(0..=4);
        let mut factors: Vec<Expr> = (0..degree)
            .map(|_| match rng.gen_range(0..6) {
                0 | 1 => Expr::var(),
                2 => Expr::conj(Expr::var()),
                _ => Expr::component(rng.gen_range(0..4)),
            })
            .collect();
        let at = rng.gen_range(0..=factors.len());
        factors.insert(at, Expr::constant(unit_ball_coefficient(rng)));
        let term = Expr::prod(factors);
        acc = Some(match acc {
            None => term,
            Some(a) => Expr::sum(a, term),
        });
    }
    acc.unwrap()
}

pub fn exact_point(rng: &mut ChaCha8Rng) -> Quaternion {
    let c: [Scalar; 4] = std::array::from_fn(|_| Scalar::Exact(small_rational(rng, 9, 7)));
    Quaternion::from_components(c).unwrap()
}

/// Uniform in the closed ball of the given radius, float mode.
pub fn ball_point(rng: &mut ChaCha8Rng, radius: f64) -> Quaternion {
    loop {
        let c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if c.iter().map(|v| v * v).sum::<f64>() <= 1.0 {
            return Quaternion::float(c[0] * radius, c[1] * radius, c[2] * radius, c[3] * radius);
        }
    }
}

pub fn float_of(q: &Quaternion) -> Quaternion {
    q.to_mode(Mode::Float).unwrap()
}
