//! Left and right Cauchy–Fueter operators.
//!
//! For `f = f0 + f1 i + f2 j + f3 k` in the real coordinates of
//! `q = q0 + q1 i + q2 j + q3 k`,
//!
//! ```text
//! left:   ∂f/∂q0 + i ∂f/∂q1 + j ∂f/∂q2 + k ∂f/∂q3
//! right:  ∂f/∂q0 + ∂f/∂q1 i + ∂f/∂q2 j + ∂f/∂q3 k
//! ```
//!
//! `f` is left (right) regular where the left (right) operator vanishes.
//!
//! ```
//! use hamilton::expr::{expand, parse};
//! use hamilton::fueter::fueter_right_symbolic;
//!
//! let p = expand(&parse("q").unwrap()).unwrap();
//! assert_eq!(fueter_right_symbolic(&p).to_string(), "-2");
//! ```

use std::fmt;

use serde::Serialize;

use crate::error::{AlgebraError, NumericError};
use crate::expr::{expand, CanonicalPoly, Expr};
use crate::quaternion::{unit_table, Quaternion, Unit};
use crate::report::{RegularityMode, RegularityReport, Residual};
use crate::sampling::Sampler;
use crate::scalar::{Mode, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn regularity_mode(self) -> RegularityMode {
        match self {
            Side::Left => RegularityMode::FueterLeft,
            Side::Right => RegularityMode::FueterRight,
        }
    }
}

pub use crate::report::Method;

fn apply_symbolic(p: &CanonicalPoly, side: Side) -> CanonicalPoly {
    let mode = p.mode().unwrap_or(Mode::Exact);
    let mut out = CanonicalPoly::zero();
    for u in Unit::ALL {
        let d = p.derivative(u.index());
        let e = Quaternion::unit(u, mode);
        out = &out
            + &match side {
                Side::Left => d.left_mul(&e),
                Side::Right => d.right_mul(&e),
            };
    }
    out
}

/// `Σ e_t · ∂p/∂q_t`. Monomials are real, so the unit acts on each
/// coefficient from the left.
pub fn fueter_left_symbolic(p: &CanonicalPoly) -> CanonicalPoly {
    apply_symbolic(p, Side::Left)
}

/// `Σ ∂p/∂q_t · e_t`, units acting on coefficients from the right.
pub fn fueter_right_symbolic(p: &CanonicalPoly) -> CanonicalPoly {
    apply_symbolic(p, Side::Right)
}

pub fn fueter_symbolic(p: &CanonicalPoly, side: Side) -> CanonicalPoly {
    apply_symbolic(p, side)
}

pub(crate) fn check_float(q: &Quaternion) -> Result<(), NumericError> {
    if q.mode() != Mode::Float {
        return Err(NumericError::RequiresFloat);
    }
    Ok(())
}

pub(crate) fn check_step(name: &str, h: f64) -> Result<(), NumericError> {
    if !(h.is_finite() && h > 0.0) {
        return Err(NumericError::InvalidArgument(format!("{name} must be positive and finite, got {h}")));
    }
    Ok(())
}

/// Evaluates `f` and rejects non-finite output.
pub(crate) fn eval_finite<F>(f: &F, q: &Quaternion) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    let v = f(q)?;
    if v.to_f64_array().iter().all(|c| c.is_finite()) {
        Ok(v)
    } else {
        Err(NumericError::Domain(q.to_string()))
    }
}

/// Float-mode evaluator for an expression.
pub fn evaluator(e: &Expr) -> Result<impl Fn(&Quaternion) -> Result<Quaternion, AlgebraError>, AlgebraError> {
    let e = e.to_mode(Mode::Float)?;
    Ok(move |q: &Quaternion| crate::expr::eval(&e, q))
}

/// Central difference `(f(q + h e_t) - f(q - h e_t)) / 2h`.
pub fn partial_numeric<F>(f: &F, q: &Quaternion, t: usize, h: f64) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    check_float(q)?;
    check_step("h", h)?;
    let mut step = [0.0; 4];
    step[t] = h;
    let dq = Quaternion::float(step[0], step[1], step[2], step[3]);
    let plus = eval_finite(f, &q.checked_add(&dq)?)?;
    let minus = eval_finite(f, &q.checked_sub(&dq)?)?;
    Ok(plus.checked_sub(&minus)?.scale(&Scalar::Float(1.0 / (2.0 * h)))?)
}

/// Cauchy–Fueter operator by central differences, `O(h²)` accurate for
/// smooth `f`.
pub fn fueter_numeric<F>(f: &F, side: Side, q: &Quaternion, h: f64) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    let mut acc = Quaternion::zero(Mode::Float);
    for u in Unit::ALL {
        let d = partial_numeric(f, q, u.index(), h)?;
        let e = Quaternion::unit(u, Mode::Float);
        let term = match side {
            Side::Left => e.mul_components(&d)?,
            Side::Right => d.mul_components(&e)?,
        };
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FueterConfig {
    pub h: f64,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    /// Radius of the ball sample points are drawn from.
    pub radius: f64,
    /// Explicit sample points; replaces the seeded ball sample when set.
    pub points: Option<Vec<Quaternion>>,
}

impl Default for FueterConfig {
    fn default() -> Self {
        FueterConfig { h: 1e-5, tol: 1e-6, samples: 25, seed: 42, radius: 1.0, points: None }
    }
}

impl FueterConfig {
    pub fn sample_points(&self) -> Vec<Quaternion> {
        match &self.points {
            Some(p) => p.iter().map(Quaternion::to_float).collect(),
            None => {
                let mut s = Sampler::new(self.seed);
                (0..self.samples).map(|_| s.ball_point(self.radius)).collect()
            }
        }
    }
}

/// Decides left or right regularity of an expression.
///
/// The symbolic method is exact: the verdict is `Regular` iff the operator
/// maps the canonical polynomial to zero. The numeric method evaluates the
/// finite-difference operator at sample points and compares the largest
/// residual norm with `config.tol`.
pub fn is_regular(e: &Expr, side: Side, method: Method, config: &FueterConfig) -> Result<RegularityReport, NumericError> {
    match method {
        Method::Symbolic => {
            let p = expand(e)?;
            Ok(RegularityReport::symbolic(side.regularity_mode(), fueter_symbolic(&p, side)))
        }
        Method::Numeric => {
            check_step("h", config.h)?;
            check_step("tol", config.tol)?;
            let points = config.sample_points();
            if points.is_empty() {
                return Err(NumericError::InvalidArgument("at least one sample point is required".into()));
            }
            let f = evaluator(e)?;
            let residuals = points
                .into_iter()
                .map(|q| {
                    let r = fueter_numeric(&f, side, &q, config.h)?;
                    Ok(Residual { norm: r.norm_f64(), point: q, residual: r, slice: None })
                })
                .collect::<Result<Vec<_>, NumericError>>()?;
            Ok(RegularityReport::numeric(side.regularity_mode(), residuals, config.tol))
        }
    }
}

/// Which side `eps·dir` divides from in the difference quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DivisionSide {
    /// `(eps·dir)⁻¹ [f(q + eps·dir) - f(q)]`
    #[default]
    Left,
    /// `[f(q + eps·dir) - f(q)] (eps·dir)⁻¹`
    Right,
}

/// Difference quotient along `dir`, dividing on the left.
///
/// Functions `a + q b` give `b` in every direction; `q²` does not.
pub fn difference_quotient<F>(f: &F, q: &Quaternion, dir: &Quaternion, eps: f64) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    difference_quotient_with(f, q, dir, eps, DivisionSide::Left)
}

pub fn difference_quotient_with<F>(
    f: &F,
    q: &Quaternion,
    dir: &Quaternion,
    eps: f64,
    side: DivisionSide,
) -> Result<Quaternion, NumericError>
where
    F: Fn(&Quaternion) -> Result<Quaternion, AlgebraError>,
{
    check_float(q)?;
    check_float(dir)?;
    check_step("eps", eps)?;
    if dir.is_zero() {
        return Err(NumericError::InvalidArgument("direction must be non-zero".into()));
    }
    let h = dir.scale(&Scalar::Float(eps))?;
    let diff = eval_finite(f, &q.checked_add(&h)?)?.checked_sub(&eval_finite(f, q)?)?;
    let inv = h.inverse()?;
    Ok(match side {
        DivisionSide::Left => inv.mul_components(&diff)?,
        DivisionSide::Right => diff.mul_components(&inv)?,
    })
}

/// One entry `sign · ∂/∂q_var` of the real PDE system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartialOp {
    pub sign: i8,
    pub var: usize,
}

impl fmt::Display for PartialOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}∂{}", if self.sign < 0 { "-" } else { "" }, self.var)
    }
}

/// The Fueter operator written as a real 4×4 system of first-order
/// operators: component `r` of the image is `Σ_s entries[r][s] f_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OperatorMatrix {
    pub side: Side,
    pub entries: [[PartialOp; 4]; 4],
}

impl OperatorMatrix {
    /// Applies the system to the real components of `p`; returns the four
    /// real component polynomials of the image.
    pub fn apply(&self, p: &CanonicalPoly) -> [CanonicalPoly; 4] {
        let f = p.real_components();
        std::array::from_fn(|r| {
            let mut acc = CanonicalPoly::zero();
            for (s, op) in self.entries[r].iter().enumerate() {
                let d = f[s].derivative(op.var);
                acc = if op.sign < 0 { &acc - &d } else { &acc + &d };
            }
            acc
        })
    }
}

impl fmt::Display for OperatorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|op| format!("{:>4}", op.to_string())).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Real system matrix of the left or right operator.
///
/// Expanding `Σ_t e_t ∂_t (Σ_s f_s e_s)`, the `r`-th component collects
/// `∂_t f_s` for the unique `t` with `e_t e_s = ±e_r`. The left matrix has
/// the sign pattern of the left multiplication matrix with `p_t` replaced by
/// `∂/∂q_t`; the right matrix that of right multiplication.
pub fn pde_system_matrix(side: Side) -> OperatorMatrix {
    let table = unit_table();
    let mut entries = [[PartialOp { sign: 1, var: 0 }; 4]; 4];
    for t in 0..4 {
        for s in 0..4 {
            let prod = match side {
                Side::Left => table[t][s],
                Side::Right => table[s][t],
            };
            entries[prod.unit.index()][s] = PartialOp { sign: if prod.negative { -1 } else { 1 }, var: t };
        }
    }
    OperatorMatrix { side, entries }
}
