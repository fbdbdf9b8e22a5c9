//! Expressions in a quaternion variable `q`.
//!
//! [`parse`] reads the text syntax, [`eval`] evaluates structurally at a
//! point, and [`expand`] distributes everything into a [`CanonicalPoly`].
//! For every expression and every exact point the two evaluation routes
//! agree exactly; the tests check this on random expressions.
//!
//! ```
//! use hamilton::expr::{expand, parse};
//!
//! let p = expand(&parse("q*conj(q)").unwrap()).unwrap();
//! assert_eq!(p.to_string(), "q0^2+q1^2+q2^2+q3^2");
//! ```

mod ast;
mod parser;
mod poly;

pub use ast::{Expr, ExprKind};
pub use parser::{parse, parse_with_mode, MAX_EXPONENT};
pub use poly::{CanonicalPoly, Monomial, MAX_VARIABLE_DEGREE};

use crate::error::{AlgebraError, ExprError};
use crate::quaternion::Quaternion;
use crate::scalar::Mode;

/// Expands into canonical form.
///
/// The polynomial is built in the mode of the expression's constants (exact
/// when there are none). `q` becomes `q0 + q1 i + q2 j + q3 k`, `conj(q)`
/// becomes `q0 - q1 i - q2 j - q3 k`, and series are cut at their declared
/// truncation.
pub fn expand(e: &Expr) -> Result<CanonicalPoly, ExprError> {
    let mode = e.mode()?.unwrap_or(Mode::Exact);
    expand_in(e, mode)
}

fn expand_in(e: &Expr, mode: Mode) -> Result<CanonicalPoly, ExprError> {
    Ok(match &e.kind {
        ExprKind::Const(c) => CanonicalPoly::constant(c.clone()),
        ExprKind::VarQ => CanonicalPoly::variable(mode),
        ExprKind::Component(t) => CanonicalPoly::component(*t, mode),
        ExprKind::Conj(inner) => expand_in(inner, mode)?.conjugate(),
        ExprKind::Neg(inner) => -&expand_in(inner, mode)?,
        ExprKind::Sum(a, b) => &expand_in(a, mode)? + &expand_in(b, mode)?,
        ExprKind::Prod(factors) => {
            let mut acc = CanonicalPoly::constant(Quaternion::one(mode));
            for f in factors {
                acc = acc.checked_mul(&expand_in(f, mode)?)?;
            }
            acc
        }
        ExprKind::Pow(base, n) => {
            let b = expand_in(base, mode)?;
            let mut acc = CanonicalPoly::constant(Quaternion::one(mode));
            for _ in 0..*n {
                acc = acc.checked_mul(&b)?;
            }
            acc
        }
        ExprKind::Series { coeffs, truncation } => {
            let q = CanonicalPoly::variable(mode);
            let mut power = CanonicalPoly::constant(Quaternion::one(mode));
            let mut acc = CanonicalPoly::zero();
            for n in 0..=*truncation {
                if n > 0 {
                    power = power.checked_mul(&q)?;
                }
                if let Some(a) = coeffs.get(n) {
                    acc = &acc + &power.left_mul(a);
                }
            }
            acc
        }
    })
}

/// Evaluates structurally at `q`. Constants must share the mode of `q`.
pub fn eval(e: &Expr, q: &Quaternion) -> Result<Quaternion, AlgebraError> {
    Ok(match &e.kind {
        ExprKind::Const(c) => {
            if c.mode() != q.mode() {
                return Err(AlgebraError::ModeMismatch { left: c.mode(), right: q.mode() });
            }
            c.clone()
        }
        ExprKind::VarQ => q.clone(),
        ExprKind::Component(t) => Quaternion::real(q.component(*t).clone()),
        ExprKind::Conj(inner) => eval(inner, q)?.conjugate(),
        ExprKind::Neg(inner) => -eval(inner, q)?,
        ExprKind::Sum(a, b) => eval(a, q)?.checked_add(&eval(b, q)?)?,
        ExprKind::Prod(factors) => {
            let mut acc = Quaternion::one(q.mode());
            for f in factors {
                acc = acc.mul_components(&eval(f, q)?)?;
            }
            acc
        }
        ExprKind::Pow(base, n) => {
            let b = eval(base, q)?;
            let mut acc = Quaternion::one(q.mode());
            for _ in 0..*n {
                acc = acc.mul_components(&b)?;
            }
            acc
        }
        ExprKind::Series { coeffs, truncation } => {
            let mut power = Quaternion::one(q.mode());
            let mut acc = Quaternion::zero(q.mode());
            for n in 0..=*truncation {
                if n > 0 {
                    power = power.mul_components(q)?;
                }
                if let Some(a) = coeffs.get(n) {
                    acc = acc.checked_add(&a.mul_components(&power)?)?;
                }
            }
            acc
        }
    })
}

/// Evaluates a canonical polynomial at `q`.
pub fn eval_poly(p: &CanonicalPoly, q: &Quaternion) -> Result<Quaternion, AlgebraError> {
    p.eval(q)
}
