//! Slice regularity.
//!
//! For a unit imaginary `I` the complex line `L_I = ℝ + ℝI` is a copy of
//! the complex numbers. A function is slice-regular when each restriction
//! `F(x, y) = f(x + yI)` satisfies the Cauchy–Riemann equation on its line.
//! The residual used here is
//!
//! ```text
//! ∂F/∂x + (∂F/∂y) · I
//! ```
//!
//! with `I` multiplying from the right, so every `a qⁿ` (coefficient on the
//! left) has zero residual. [`ResidualSide::Left`] gives `∂F/∂x + I · ∂F/∂y`
//! instead, under which `qⁿ a` is the regular family.
//!
//! ```
//! use hamilton::expr::parse;
//! use hamilton::slice::{is_slice_regular, SliceConfig};
//!
//! let report = is_slice_regular(&parse("k*q^3").unwrap(), &SliceConfig::default()).unwrap();
//! assert!(report.is_regular());
//! ```

use serde::Serialize;

use crate::error::{AlgebraError, NumericError};
use crate::expr::Expr;
use crate::fueter::{check_step, eval_finite, evaluator};
use crate::quaternion::{Quaternion, Unit};
use crate::report::{RegularityMode, RegularityReport, Residual, SliceDirection};
use crate::sampling::Sampler;
use crate::scalar::{Mode, Scalar};

const FLOAT_UNIT_TOL: f64 = 1e-12;

/// `I = x1 i + x2 j + x3 k` with `x1² + x2² + x3² = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitImaginary {
    x: [Scalar; 3],
}

impl UnitImaginary {
    /// Checks the unit condition exactly in exact mode and within `1e-12`
    /// in float mode.
    pub fn new(x1: Scalar, x2: Scalar, x3: Scalar) -> Result<Self, NumericError> {
        let q = Quaternion::new(Scalar::zero(x1.mode()), x1, x2, x3)?;
        let n2 = q.norm_squared();
        let ok = match &n2 {
            Scalar::Exact(_) => n2.is_one(),
            Scalar::Float(v) => (v - 1.0).abs() <= FLOAT_UNIT_TOL,
        };
        if !ok {
            return Err(NumericError::InvalidArgument(format!("x1²+x2²+x3² = {n2}, expected 1")));
        }
        let [_, x1, x2, x3] = q.components().clone();
        Ok(UnitImaginary { x: [x1, x2, x3] })
    }

    pub fn float(x1: f64, x2: f64, x3: f64) -> Result<Self, NumericError> {
        UnitImaginary::new(Scalar::Float(x1), Scalar::Float(x2), Scalar::Float(x3))
    }

    /// Rescales a non-zero float vector to unit length.
    pub fn normalized(v: [f64; 3]) -> Result<Self, NumericError> {
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if !(n.is_finite() && n > 0.0) {
            return Err(NumericError::InvalidArgument("cannot normalize a zero vector".into()));
        }
        UnitImaginary::float(v[0] / n, v[1] / n, v[2] / n)
    }

    /// `i`, `j` or `k` exactly.
    pub fn axis(u: Unit) -> Result<Self, NumericError> {
        if u == Unit::One {
            return Err(NumericError::InvalidArgument("1 is not imaginary".into()));
        }
        let mut x = [0, 0, 0];
        x[u.index() - 1] = 1;
        UnitImaginary::new(
            Scalar::from_int(x[0], Mode::Exact),
            Scalar::from_int(x[1], Mode::Exact),
            Scalar::from_int(x[2], Mode::Exact),
        )
    }

    pub fn mode(&self) -> Mode {
        self.x[0].mode()
    }

    pub fn components(&self) -> &[Scalar; 3] {
        &self.x
    }

    pub fn to_quaternion(&self) -> Quaternion {
        let [a, b, c] = self.x.clone();
        Quaternion::new(Scalar::zero(a.mode()), a, b, c).expect("shared mode")
    }

    pub fn direction(&self) -> SliceDirection {
        SliceDirection { x1: self.x[0].to_f64(), x2: self.x[1].to_f64(), x3: self.x[2].to_f64() }
    }

    fn to_float_quaternion(&self) -> Quaternion {
        self.to_quaternion().to_float()
    }
}

/// Coordinates `(x, y)` on a complex line `L_I`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlicePoint {
    pub x: Scalar,
    pub y: Scalar,
}

impl SlicePoint {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        SlicePoint { x, y }
    }

    pub fn float(x: f64, y: f64) -> Self {
        SlicePoint { x: Scalar::Float(x), y: Scalar::Float(y) }
    }
}

/// `x + y I`.
pub fn embed(i: &UnitImaginary, p: &SlicePoint) -> Result<Quaternion, AlgebraError> {
    Quaternion::real(p.x.clone()).checked_add(&i.to_quaternion().scale(&p.y)?)
}

/// Side `I` multiplies `∂F/∂y` from in the residual.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ResidualSide {
    Left,
    #[default]
    Right,
}

/// Cauchy–Riemann residual `∂F/∂x + (∂F/∂y)·I` of `F(x, y) = f(x + yI)` by
/// central differences. The computation runs in float mode whatever the
/// mode of `i` and `p`.
pub fn slice_cr_residual<F>(f: &F, i: &UnitImaginary, p: &SlicePoint, h: f64) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    slice_cr_residual_with(f, i, p, h, ResidualSide::Right)
}

pub fn slice_cr_residual_with<F>(
    f: &F,
    i: &UnitImaginary,
    p: &SlicePoint,
    h: f64,
    side: ResidualSide,
) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    check_step("h", h)?;
    let unit = i.to_float_quaternion();
    let (x, y) = (p.x.to_f64(), p.y.to_f64());
    let at = |x: f64, y: f64| -> Result<Quaternion, NumericError> {
        let q = Quaternion::real(Scalar::Float(x)).checked_add(&unit.scale(&Scalar::Float(y))?)?;
        eval_finite(f, &q)
    };
    let half = Scalar::Float(1.0 / (2.0 * h));
    let dx = at(x + h, y)?.checked_sub(&at(x - h, y)?)?.scale(&half)?;
    let dy = at(x, y + h)?.checked_sub(&at(x, y - h)?)?.scale(&half)?;
    let rotated = match side {
        ResidualSide::Right => dy.mul_components(&unit)?,
        ResidualSide::Left => unit.mul_components(&dy)?,
    };
    Ok(dx.checked_add(&rotated)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceConfig {
    pub num_slices: usize,
    pub num_points: usize,
    pub h: f64,
    pub tol: f64,
    pub seed: u64,
    /// Points are drawn from the half disk `x² + y² ≤ radius²`, `y > 0`.
    pub radius: f64,
    pub side: ResidualSide,
}

impl Default for SliceConfig {
    fn default() -> Self {
        SliceConfig { num_slices: 8, num_points: 10, h: 1e-5, tol: 1e-6, seed: 42, radius: 1.0, side: ResidualSide::Right }
    }
}

/// Smallest `y / radius` for sampled points; keeps them off the real axis.
const MIN_Y_FRACTION: f64 = 0.05;

impl SliceConfig {
    /// Seeded slices and, for each slice, seeded points.
    pub fn samples(&self) -> Vec<(UnitImaginary, Vec<SlicePoint>)> {
        let mut s = Sampler::new(self.seed);
        let slices: Vec<UnitImaginary> = (0..self.num_slices)
            .map(|_| {
                let [a, b, c] = s.sphere_direction();
                UnitImaginary::float(a, b, c).expect("sampled on the sphere")
            })
            .collect();
        slices
            .into_iter()
            .map(|i| {
                let points = (0..self.num_points)
                    .map(|_| loop {
                        let x = s.uniform(-1.0, 1.0);
                        let y = s.uniform(MIN_Y_FRACTION, 1.0);
                        if x * x + y * y <= 1.0 {
                            break SlicePoint::float(x * self.radius, y * self.radius);
                        }
                    })
                    .collect();
                (i, points)
            })
            .collect()
    }
}

/// Samples `num_slices × num_points` residuals and compares the largest
/// norm with `tol`. The verdict is sample-based evidence.
pub fn is_slice_regular(e: &Expr, config: &SliceConfig) -> Result<RegularityReport, NumericError> {
    check_step("h", config.h)?;
    check_step("tol", config.tol)?;
    check_step("radius", config.radius)?;
    if config.num_slices == 0 || config.num_points == 0 {
        return Err(NumericError::InvalidArgument("num_slices and num_points must be positive".into()));
    }
    let f = evaluator(e)?;
    let mut residuals = Vec::with_capacity(config.num_slices * config.num_points);
    for (i, points) in config.samples() {
        for p in points {
            let r = slice_cr_residual_with(&f, &i, &p, config.h, config.side)?;
            residuals.push(Residual {
                point: embed(&i, &p)?,
                norm: r.norm_f64(),
                residual: r,
                slice: Some(i.direction()),
            });
        }
    }
    let mut report = RegularityReport::numeric(RegularityMode::SliceRegular, residuals, config.tol);
    report.notes.push(match config.side {
        ResidualSide::Right => "residual ∂F/∂x + (∂F/∂y)·I on F(x,y) = f(x+yI)".to_string(),
        ResidualSide::Left => "residual ∂F/∂x + I·(∂F/∂y) on F(x,y) = f(x+yI)".to_string(),
    });
    Ok(report)
}

/// Result of summing `Σ_{n ≤ N} a_n qⁿ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesValue {
    pub value: Quaternion,
    /// Estimated bound on the distance from `value` to the full sum,
    /// including float rounding; `None` when the series is flagged
    /// divergent at `q`.
    pub truncation_bound: Option<f64>,
    pub divergent: bool,
    /// `1 / max |a_n|^(1/n)` over the last 16 coefficients consulted;
    /// infinite when they all vanish.
    pub radius_estimate: f64,
    /// Whether `truncation_bound ≤ tail_tol`.
    pub within_tolerance: bool,
}

/// Number of coefficients past `N` summed explicitly in the tail estimate.
pub const TAIL_TERMS: usize = 64;
const RADIUS_WINDOW: usize = 16;

/// Sums `Σ_{n=0}^{N} a_n qⁿ` by Horner's rule `v ← a_n + v q`, which keeps
/// every coefficient to the left of its power.
///
/// The tail estimate sums `|a_n| |q|ⁿ` for `N < n ≤ N + 64` and closes it
/// with a geometric remainder at ratio `|q| / radius_estimate`. At or past
/// the radius estimate no bound is given and the result is flagged
/// divergent; the partial sum is still returned.
pub fn series_eval<C>(coeff: C, q: &Quaternion, n: usize, tail_tol: f64) -> Result<SeriesValue, NumericError>
where
    C: Fn(usize) -> Quaternion,
{
    let q = q.to_float();
    let r = q.norm_f64();
    let coeffs: Vec<Quaternion> = (0..=n + TAIL_TERMS).map(|k| coeff(k).to_float()).collect();
    let mags: Vec<f64> = coeffs.iter().map(Quaternion::norm_f64).collect();
    if mags.iter().any(|m| !m.is_finite()) || !r.is_finite() {
        return Err(NumericError::Domain("series coefficients or point are not finite".into()));
    }

    let mut value = Quaternion::zero(Mode::Float);
    for a in coeffs[..=n].iter().rev() {
        value = a.checked_add(&value.mul_components(&q)?)?;
    }

    // Root test over the last coefficients consulted.
    let start = mags.len() - RADIUS_WINDOW;
    let max_root = (start..mags.len())
        .filter(|&k| k > 0 && mags[k] > 0.0)
        .map(|k| mags[k].powf(1.0 / k as f64))
        .fold(0.0_f64, f64::max);
    let radius_estimate = if max_root > 0.0 { 1.0 / max_root } else { f64::INFINITY };

    let divergent = r >= radius_estimate;
    let truncation_bound = if divergent {
        None
    } else {
        let term = |k: usize| mags[k] * r.powi(k as i32);
        let tail: f64 = (n + 1..=n + TAIL_TERMS).map(term).sum();
        let rho = if radius_estimate.is_infinite() { 0.0 } else { r / radius_estimate };
        let remainder = term(n + TAIL_TERMS) * rho / (1.0 - rho);
        let magnitude: f64 = (0..=n).map(term).sum();
        let rounding = 16.0 * (n as f64 + 1.0) * f64::EPSILON * magnitude;
        Some(tail + remainder + rounding)
    };
    Ok(SeriesValue {
        value,
        within_tolerance: truncation_bound.is_some_and(|b| b <= tail_tol),
        truncation_bound,
        divergent,
        radius_estimate,
    })
}

/// [`series_eval`] over a finite list; missing coefficients are zero.
pub fn series_eval_list(coeffs: &[Quaternion], q: &Quaternion, n: usize, tail_tol: f64) -> Result<SeriesValue, NumericError> {
    series_eval(|k| coeffs.get(k).cloned().unwrap_or_else(|| Quaternion::zero(Mode::Float)), q, n, tail_tol)
}
